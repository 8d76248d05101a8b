"""Regenerates the bundled mini corpus. Output is deterministic.

Usage: python3 make_mini.py   (writes next to this script)
"""

import json
import os
import random

HERE = os.path.dirname(os.path.abspath(__file__))
rng = random.Random(20231015)

SUBS = ["politics", "conservative", "liberal", "askscience", "cooking", "movies"]
POLITICAL = {"politics", "conservative", "liberal"}
T0 = 1583020800  # 2020-03-01

PROPER = [
    "Senator Warren spoke with Governor Abbott in Austin.",
    "Ottawa and Paris both changed the rule last week.",
    "Jordan Peterson and Bernie Sanders agree on nothing.",
    "The mayor of Chicago met Alice Walker on Tuesday.",
]
QUESTIONS = [
    "Why is nobody talking about this?",
    "Has anyone else tried this recipe?",
    "What would you do in this situation?",
    "Is this really the best we can do?",
]
HEDGES = [
    "I think this might be a mistake.",
    "Maybe the numbers are somewhat misleading.",
    "It seems likely that the plan will probably change.",
    "In my opinion the result is sort of unclear.",
]
THANKS = [
    "Thanks for reading.",
    "Thank you all for the helpful answers.",
    "I appreciate any advice, cheers.",
]
POSITIVE = [
    "The new policy is a great and wonderful improvement.",
    "This is the best soup I have ever made!",
    "I really love how the ending came together.",
]
NEGATIVE = [
    "The debate was a terrible, awful waste of time.",
    "This decision is stupid and it makes me angry.",
    "The sequel was boring and the acting was bad.",
]
NEUTRAL = [
    "The committee meets again in March.",
    "The sauce needs two cups of stock and an onion.",
    "The study measured the temperature every hour.",
    "The film runs for about two hours.",
]
COMMENTS = [
    "I agree with this.",
    "That is not what the article says.",
    "You are an idiot if you believe that.",
    "Good point, I had not thought of it.",
    "This is garbage and so are you.",
    "Source?",
    "Interesting, thanks for sharing.",
    "Nobody cares about your opinion.",
    "I tried it and it worked fine.",
    "What a stupid take.",
]
TEMPLATE = "This comment was removed by the moderators of r/politics for breaking rule 2."


def submission_text(i):
    pools = [PROPER, QUESTIONS, HEDGES, THANKS, POSITIVE, NEGATIVE, NEUTRAL]
    k = 2 + i % 3
    chosen = rng.sample(pools, k)
    if NEUTRAL not in chosen:
        chosen.append(NEUTRAL)
    return " ".join(rng.choice(p) for p in chosen)


def clip(x):
    return max(0.0, min(1.0, round(x, 4)))


subs, comments, tox, cscore = [], [], [], []


def add_submission(sid, sub, t, title, body):
    subs.append({"id": sid, "subreddit": sub, "title": title, "selftext": body, "created_utc": t})


def add_comment(cid, sid, sub, t, body, parent=None):
    comments.append({"id": cid, "subreddit": sub, "parent_id": parent or "t3_" + sid, "body": body,
                     "created_utc": t})


def plant_scores(sid, c, n_comments_ids):
    cscore.append((sid, clip(c)))
    tox.append((sid, clip(0.05 + 0.5 * rng.random() * c)))
    for cid in n_comments_ids:
        tox.append((cid, clip(0.08 + 0.55 * c * rng.random() + 0.1 * rng.random())))


for i in range(1, 31):
    sid = "s%02d" % i
    sub = SUBS[(i - 1) % len(SUBS)]
    t = T0 + i * 3600
    text = submission_text(i)
    title, _, body = text.partition(". ")
    add_submission(sid, sub, t, title.rstrip(".") + ".", body)
    c = (0.45 + 0.45 * rng.random()) if sub in POLITICAL else (0.05 + 0.45 * rng.random())

    if i <= 24:
        n = 5 + i % 6
    elif i == 25:
        n = 4                        # too few comments
    elif i == 26:
        n = 12                       # sampled down to 10
    elif i == 27:
        n = 6                        # two get deleted, leaving 4
    else:
        n = 6
    ids = []
    for k in range(n):
        cid = "c%02d%02d" % (i, k)
        body = rng.choice(COMMENTS)
        if i == 27 and k < 2:
            body = "[deleted]"
        add_comment(cid, sid, sub, t + 60 * (k + 1), body)
        ids.append(cid)
    plant_scores(sid, c, ids)

# Case overrides: removed submission, one outside the date window, one in a
# subreddit that is not on the allow-list.
subs[27]["selftext"] = "[removed]"
subs[28]["created_utc"] = 1546300800  # 2019-01-01
for s in subs[29:]:
    s["subreddit"] = "gaming"
for c in comments:
    if c["parent_id"] == "t3_s30":
        c["subreddit"] = "gaming"

# The moderator template appears three times in r/politics.
for n, sid in enumerate(["s01", "s07", "s13"]):
    add_comment("m%02d" % n, sid, "politics", T0 + 90000 + n, TEMPLATE)
    tox.append(("m%02d" % n, 0.01))

# Two orphans and three nested replies.
add_comment("o01", "zz01", "politics", T0 + 5000, "Replying to a thread that is gone.")
add_comment("o02", "zz02", "movies", T0 + 5001, "Same here.")
for n in range(3):
    add_comment("n%02d" % n, "", "cooking", T0 + 6000 + n, "Nested reply.", parent="t1_c0400")

with open(os.path.join(HERE, "submissions.jsonl"), "w") as f:
    for s in subs:
        f.write(json.dumps(s, sort_keys=True) + "\n")
with open(os.path.join(HERE, "comments.jsonl"), "w") as f:
    for c in comments:
        f.write(json.dumps(c, sort_keys=True) + "\n")

with open(os.path.join(HERE, "toxicity.csv"), "w") as f:
    f.write("# scorer: synthetic-moderation\n# exclude: spam\npost_id,category,score\n")
    for pid, v in tox:
        f.write("%s,toxicity,%s\n" % (pid, v))
        f.write("%s,insult,%s\n" % (pid, clip(v * rng.random())))
        f.write("%s,spam,%s\n" % (pid, clip(rng.random())))

with open(os.path.join(HERE, "controversy.csv"), "w") as f:
    f.write("# scorer: synthetic-controversy\npost_id,score\n")
    for pid, v in cscore:
        f.write("%s,%s\n" % (pid, v))

# Annotations: label follows the planted score with a few flips; label_b
# disagrees with label on a few more.
scored_comments = [(pid, v) for pid, v in tox if pid.startswith("c")][:60]
with open(os.path.join(HERE, "annotations.csv"), "w") as f:
    f.write("post_id,label,label_b\n")
    for n, (pid, v) in enumerate(scored_comments):
        label = int(v > 0.4)
        if n % 17 == 5:
            label = 1 - label
        label_b = label if n % 11 != 3 else 1 - label
        f.write("%s,%d,%d\n" % (pid, label, label_b))

config = {
    "dumps": ["submissions.jsonl", "comments.jsonl"],
    "toxicity_scores": "toxicity.csv",
    "c_scores": "controversy.csv",
    "annotations": "annotations.csv",
    "data_dir": "..",
    "output_dir": "out",
    "seed": 7,
    "subreddits": SUBS,
    "start_utc": 1577836800,
    "end_utc": 1609459199,
    "template_min_occurrences": 2,
}
with open(os.path.join(HERE, "config.json"), "w") as f:
    json.dump(config, f, indent=2)
    f.write("\n")
