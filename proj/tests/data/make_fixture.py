"""Regenerates fixture_corpus.jsonl. The output is checked in; rerunning with
the same seed reproduces it byte for byte."""
import json
import random

rng = random.Random(20160301)

EN = {
    "Care": ["protect", "safe", "caring", "compassion", "harm", "hurt", "suffering", "cruel", "abuse"],
    "Fairness": ["fair", "equal", "justice", "rights", "unfair", "cheat", "fraud", "discrimination"],
    "Ingroup": ["loyal", "nation", "family", "community", "together", "betray", "traitor", "enemy"],
    "Authority": ["law", "order", "duty", "respect", "tradition", "police", "riot", "illegal", "chaos"],
    "Purity": ["pure", "clean", "sacred", "holy", "disgust", "dirty", "sin", "filthy", "trash"],
}
JA = {
    "Care": ["守る", "安全", "優しい", "暴力", "被害", "虐待"],
    "Fairness": ["公平", "平等", "正義", "不公平", "差別", "不正"],
    "Ingroup": ["仲間", "家族", "絆", "裏切", "敵", "団結"],
    "Authority": ["法律", "秩序", "警察", "伝統", "混乱", "違法"],
    "Purity": ["清潔", "神聖", "純粋", "汚い", "不潔", "汚染"],
}
EN_FILLER = ["election", "vote", "today", "candidate", "debate", "news", "people", "city", "campaign",
             "tonight", "policy", "speech", "rally", "country"]
EN_MODS = ["very", "really", "not", "never", "so", "good", "great", "bad", "terrible", "love", "hate"]
JA_FILLER = ["選挙", "投票", "今日", "候補者", "討論", "ニュース", "みんな", "政策", "演説", "国"]
JA_MODS = ["良い", "悪い", "嬉しい", "悲しい", "不安", "希望", "ない"]

foundations = list(EN)
en_users = [f"en_{i:02d}" for i in range(1, 21)]
ja_users = [f"ja_{i:02d}" for i in range(1, 11)]
pref = {u: foundations[i % 5] for i, u in enumerate(en_users + ja_users)}

records = []
clock = 1456790400


def en_text(user):
    words = []
    f = pref[user] if rng.random() < 0.7 else rng.choice(foundations)
    for _ in range(rng.randint(0, 3)):
        words.append(rng.choice(EN[f]))
    if rng.random() < 0.3:
        words.append(rng.choice(EN[rng.choice(foundations)]))
    words += rng.sample(EN_FILLER, rng.randint(1, 4))
    words += rng.sample(EN_MODS, rng.randint(0, 2))
    rng.shuffle(words)
    if words and rng.random() < 0.3:
        words[0] = words[0].capitalize()
    if rng.random() < 0.2:
        words.insert(0, "@" + rng.choice(en_users))
    if rng.random() < 0.2:
        words.append("#" + rng.choice(EN_FILLER))
    text = " ".join(words) + rng.choice([".", "!", "!!", "?", "", " \U0001F600"])
    if rng.random() < 0.2:
        text += " https://t.co/" + "".join(rng.choice("abcdefXYZ0123") for _ in range(8))
    if rng.random() < 0.1:
        text = text.replace("not", "don't", 1)
    return text


def ja_text(user):
    parts = []
    f = pref[user] if rng.random() < 0.7 else rng.choice(foundations)
    for _ in range(rng.randint(0, 3)):
        parts.append(rng.choice(JA[f]))
    parts += rng.sample(JA_FILLER, rng.randint(1, 3))
    parts += rng.sample(JA_MODS, rng.randint(0, 2))
    rng.shuffle(parts)
    text = "、".join(parts) + rng.choice(["。", "！", "？", "。" + rng.choice(JA_FILLER) + "が良い。", "ＡＢＣ。"])
    if rng.random() < 0.2:
        text = "@" + rng.choice(ja_users) + " " + text
    if rng.random() < 0.15:
        text += " https://t.co/" + "".join(rng.choice("abcdef0123") for _ in range(8))
    if rng.random() < 0.15:
        text += " #選挙"
    return text


originals = []
n = 0
while len(records) < 200:
    n += 1
    clock += rng.randint(30, 900)
    roll = rng.random()
    if roll < 0.62 or len(originals) < 10:
        user = rng.choice(en_users)
        rec = {"id": f"t{n:04d}", "user_id": user, "text": en_text(user), "lang": "en", "timestamp": clock,
               "retweet_of_user_id": None, "retweet_of_tweet_id": None}
    elif roll < 0.82:
        user = rng.choice(ja_users)
        rec = {"id": f"t{n:04d}", "user_id": user, "text": ja_text(user), "lang": "ja", "timestamp": clock,
               "retweet_of_user_id": None, "retweet_of_tweet_id": None}
    else:
        src = rng.choice(originals)
        pool = en_users if src["lang"] == "en" else ja_users
        same = [u for u in pool if pref[u] == pref[src["user_id"]]]
        user = rng.choice(same if rng.random() < 0.6 else pool)
        rec = {"id": f"t{n:04d}", "user_id": user, "text": "RT @" + src["user_id"] + ": " + src["text"],
               "lang": src["lang"], "timestamp": clock, "retweet_of_user_id": src["user_id"],
               "retweet_of_tweet_id": src["id"]}
    if not rec["retweet_of_user_id"]:
        originals.append(rec)
    records.append(rec)

with open("fixture_corpus.jsonl", "w", encoding="utf-8") as fh:
    for r in records:
        fh.write(json.dumps(r, ensure_ascii=False) + "\n")
