"""Deterministic demo and benchmark cohorts.

Each generator returns a pandas DataFrame of string-typed columns ready for
CSV round-tripping through the ingest pipeline. The recidivism and income
cohorts are synthetic reconstructions built to match the published group
statistics of the datasets they mirror (group sizes, base rates, and error
rates), so audits over them reproduce the documented disparities without
redistributing the original records.
"""

from __future__ import annotations

import numpy as np
import pandas as pd

from .ingest import IngestConfig

_AGE_CATS = ["Less than 25", "25 - 45", "Greater than 45"]
_PRIORS = ["0", "1 to 3", "More than 3"]


def _allocate(count: int, weights: dict[str, float]) -> list[str]:
    """Largest-remainder allocation of `count` items across weighted values."""
    names = list(weights)
    w = np.array([weights[n] for n in names], dtype=float)
    w = w / w.sum()
    exact = w * count
    base = np.floor(exact).astype(int)
    remainder = count - base.sum()
    order = np.argsort(-(exact - base), kind="stable")
    for i in range(remainder):
        base[order[i]] += 1
    out: list[str] = []
    for name, c in zip(names, base):
        out.extend([name] * c)
    return out


# (race, sex) -> (size, positive base rate, false positive rate, false negative rate).
# Tuned so the full cohort reproduces the published recidivism-audit statistics:
# dataset FPR ~0.30, African-American male FPR ~0.43 with ~0.60 base rate,
# Caucasian male base rate just over 0.40, and race x sex accuracies from
# 0.50 up to 1.00 at the small-group extremes.
_COMPAS_BLOCKS: dict[tuple[str, str], tuple[int, float, float, float]] = {
    ("African-American", "Male"): (2600, 0.60, 0.43, 0.28),
    ("African-American", "Female"): (560, 0.50, 0.33, 0.36),
    ("Caucasian", "Male"): (1700, 0.41, 0.22, 0.50),
    ("Caucasian", "Female"): (560, 0.45, 0.29, 0.46),
    ("Hispanic", "Male"): (420, 0.36, 0.21, 0.52),
    ("Hispanic", "Female"): (90, 0.33, 0.20, 0.55),
    ("Other", "Male"): (290, 0.35, 0.18, 0.55),
    ("Other", "Female"): (55, 0.31, 0.17, 0.60),
    ("Asian", "Male"): (26, 0.27, 0.10, 0.60),
    ("Asian", "Female"): (5, 0.20, 0.00, 1.00),
    ("Native American", "Male"): (8, 0.50, 0.50, 0.50),
    ("Native American", "Female"): (6, 0.50, 0.00, 0.00),
}


def _round_half_up(x: float) -> int:
    return int(x + 0.5)


def compas_cohort() -> pd.DataFrame:
    """Recidivism-audit cohort: risk deciles, binary predictions (decile > 4),
    and two-year reoffense labels, with per-(race, sex) statistics fixed by
    _COMPAS_BLOCKS."""
    rows: list[dict[str, str]] = []
    for (race, sex), (n, base, fpr, fnr) in _COMPAS_BLOCKS.items():
        positives = _round_half_up(n * base)
        negatives = n - positives
        fp = _round_half_up(negatives * fpr)
        fn = _round_half_up(positives * fnr)
        tp = positives - fn
        tn = negatives - fp
        young = 0.50 if race == "African-American" else 0.30
        felony = 0.62 if race == "African-American" else 0.52
        for cell, count, label, pred in (
            ("tp", tp, "1", "1"),
            ("fn", fn, "1", "0"),
            ("fp", fp, "0", "1"),
            ("tn", tn, "0", "0"),
        ):
            risky = cell in ("tp", "fp")
            # Error cells lean young/felony/priors-heavy; the Caucasian-female
            # false positives are predominantly felony charges.
            cell_felony = min(
                0.95,
                felony
                + (0.25 if (race, sex) == ("Caucasian", "Female") and cell == "fp" else 0.10 if risky else 0.0),
            )
            young_w = young + (0.15 if risky else 0.0)
            ages = _allocate(
                count,
                {
                    _AGE_CATS[0]: young_w,
                    _AGE_CATS[1]: 0.45,
                    _AGE_CATS[2]: max(0.05, 1.0 - young_w - 0.45),
                },
            )
            charges = _allocate(count, {"F": cell_felony, "M": 1 - cell_felony})
            priors = _allocate(
                count,
                {
                    _PRIORS[0]: 0.25 if risky else 0.45,
                    _PRIORS[1]: 0.40,
                    _PRIORS[2]: 0.35 if risky else 0.15,
                },
            )
            deciles = [str(5 + i % 6) if pred == "1" else str(1 + i % 4) for i in range(count)]
            for i in range(count):
                rows.append(
                    {
                        "race": race,
                        "sex": sex,
                        "age_cat": ages[i],
                        "charge_degree": charges[i],
                        "priors_bucket": priors[i],
                        "decile_score": deciles[i],
                        "two_year_recid": label,
                        "compas_prediction": pred,
                    }
                )
    frame = pd.DataFrame(rows)
    rng = np.random.default_rng(7)
    return frame.iloc[rng.permutation(len(frame))].reset_index(drop=True)


def compas_ingest_config() -> IngestConfig:
    return IngestConfig(
        label_column="two_year_recid",
        prediction_column="compas_prediction",
        positive_label="1",
        drop_columns=("decile_score",),
    )


def masking_cohort(scale: int = 10) -> pd.DataFrame:
    """Two-feature cohort where every single-feature group scores in the
    0.666-0.722 accuracy band while one intersection drops to 0.40."""
    cells = {
        ("dark", "circle"): (5, 2),
        ("dark", "square"): (4, 4),
        ("light", "circle"): (4, 4),
        ("light", "square"): (6, 3),
    }
    rows = []
    for (shade, shape), (n, correct) in cells.items():
        n, correct = n * scale, correct * scale
        for i in range(n):
            if i < correct:
                label = pred = str(i % 2)
            else:
                label, pred = str(i % 2), str(1 - i % 2)
            rows.append(
                {"shade": shade, "shape": shape, "label": label, "prediction": pred}
            )
    return pd.DataFrame(rows)


def masking_ingest_config() -> IngestConfig:
    return IngestConfig(
        label_column="label", prediction_column="prediction", positive_label="1"
    )


_EDUCATION = ["11th", "HS-grad", "Some-college", "Assoc", "Bachelors", "Masters"]
_OCCUPATIONS = [
    "Adm-clerical",
    "Craft-repair",
    "Exec-managerial",
    "Machine-op-inspct",
    "Other-service",
    "Prof-specialty",
    "Sales",
    "Transport-moving",
]
_COUNTRIES = ["United-States", "Mexico", "Philippines", "Germany", "India"]


def adult_cohort(n: int = 8000, seed: int = 11) -> pd.DataFrame:
    """Income-prediction cohort mirroring the census-income audit setting.

    Mostly learnable labels driven by marriage, education, age, and hours,
    with one deliberately noisy pocket: married women listed as Wife carry
    near-coin-flip labels, so any decent classifier underperforms there and
    a clustering pass can surface the group.
    """
    rng = np.random.default_rng(seed)
    male = rng.random(n) < 0.67
    sex = np.where(male, "Male", "Female")

    wife = ~male & (rng.random(n) < 0.30)
    husband = male & (rng.random(n) < 0.55)
    married = wife | husband

    relationship = np.select(
        [wife, husband],
        ["Wife", "Husband"],
        default="",
    ).astype(object)
    single_rel = rng.choice(
        ["Not-in-family", "Own-child", "Unmarried", "Other-relative"],
        size=n,
        p=[0.45, 0.25, 0.2, 0.1],
    )
    relationship[~married] = single_rel[~married]

    marital = np.where(
        married,
        "Married-civ-spouse",
        rng.choice(["Never-married", "Divorced", "Separated", "Widowed"], size=n, p=[0.6, 0.25, 0.08, 0.07]),
    )

    education = rng.choice(_EDUCATION, size=n, p=[0.08, 0.32, 0.22, 0.08, 0.2, 0.1])
    educ_rank = pd.Series(education).map({e: i for i, e in enumerate(_EDUCATION)}).to_numpy()
    occupation = rng.choice(_OCCUPATIONS, size=n)
    # The Wife pocket is kept demographically tight so it is clusterable.
    occupation = np.where(wife, rng.choice(["Adm-clerical", "Other-service", "Sales"], size=n), occupation)
    workclass = rng.choice(["Private", "Self-emp", "Gov", "Unemployed"], size=n, p=[0.7, 0.12, 0.14, 0.04])
    workclass = np.where(wife, "Private", workclass)
    race = rng.choice(["White", "Black", "Asian-Pac-Islander", "Amer-Indian-Eskimo", "Other"], size=n, p=[0.78, 0.12, 0.05, 0.02, 0.03])
    country = rng.choice(_COUNTRIES, size=n, p=[0.9, 0.04, 0.02, 0.02, 0.02])
    country = np.where(wife, "United-States", country)

    age = np.clip(rng.normal(38, 13, size=n).round(), 17, 80).astype(int)
    hours = np.clip(rng.normal(40, 11, size=n).round(), 5, 99).astype(int)

    score = (
        -2.4
        + 2.0 * married
        + 0.55 * (educ_rank - 1.5)
        + 0.045 * (age - 38)
        + 0.03 * (hours - 40)
        + 0.4 * male
    )
    p_high = 1.0 / (1.0 + np.exp(-3.5 * score))
    p_high = np.where(wife, 0.5, p_high)
    income = np.where(rng.random(n) < p_high, ">50K", "<=50K")

    return pd.DataFrame(
        {
            "age": age.astype(str),
            "workclass": workclass,
            "education": education,
            "marital_status": marital,
            "occupation": occupation,
            "relationship": relationship.astype(str),
            "race": race,
            "sex": sex,
            "hours_per_week": hours.astype(str),
            "native_country": country,
            "income": income,
        }
    )


def scale_cohort(rows: int = 100_000, features: int = 12, seed: int = 3) -> pd.DataFrame:
    """Large random categorical cohort for throughput checks."""
    rng = np.random.default_rng(seed)
    vocab_sizes = [2 + (i * 3) % 11 for i in range(features)]
    data = {}
    for i, size in enumerate(vocab_sizes):
        codes = rng.integers(0, size, size=rows)
        data[f"f{i:02d}"] = np.array([f"v{c}" for c in range(size)])[codes]
    labels = rng.random(rows) < 0.45
    flip = rng.random(rows) < 0.25
    preds = labels ^ flip
    data["label"] = np.where(labels, "1", "0")
    data["prediction"] = np.where(preds, "1", "0")
    return pd.DataFrame(data)
