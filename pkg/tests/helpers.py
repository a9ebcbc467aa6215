"""Shared generators for the test suite (seeded, so runs are reproducible)."""
import random

SYMBOLS = "abcd"


def random_pattern_set(rng: random.Random, d: int, max_len: int = 4, max_count: int = 3,
                       two_marks: bool | None = None) -> tuple[str, dict]:
    """A reduced pattern set over the first d symbols, as CLI text and a pattern -> mark dict."""
    letters = SYMBOLS[:d]
    while True:
        count = rng.randint(1, max_count)
        pats = {"".join(rng.choice(letters) for _ in range(rng.randint(2, max_len))) for _ in range(count)}
        if any(u != v and u in v for u in pats for v in pats):
            continue
        pats = sorted(pats)
        bivariate = (len(pats) > 1 and rng.random() < 0.5) if two_marks is None else two_marks and len(pats) > 1
        marks = {p: (2 if bivariate and i % 2 else 1) for i, p in enumerate(pats)}
        text = ",".join(f"{p}:t{m}" if bivariate else p for p, m in marks.items())
        return text, marks


def random_expression_text(rng: random.Random, depth: int = 4) -> str:
    """Random source text in the GF expression language, with loose spacing."""
    def sp():
        return rng.choice(["", "", " "])

    def gen(d):
        roll = rng.random()
        if d == 0 or roll < 0.25:
            return rng.choice([str(rng.randint(0, 12)), "t", "t1", "t2", "s"])
        if roll < 0.35:
            return "-" + sp() + gen(d - 1)
        if roll < 0.45:
            exp = rng.randint(-3, 3)
            return f"({gen(d - 1)}){sp()}^{sp()}{exp}"
        if roll < 0.55:
            return f"{rng.choice(['t', 's', 't1', '2'])}^{rng.randint(0, 4)}"
        op = rng.choice("+-*/")
        left, right = gen(d - 1), gen(d - 1)
        if rng.random() < 0.5:
            return f"({left}{sp()}{op}{sp()}{right})"
        return f"{left}{sp()}{op}{sp()}{right}"
    return gen(depth)
