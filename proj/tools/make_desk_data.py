#!/usr/bin/env python3
"""Generates the synthetic desk-scale dataset under data/.

Everything here is invented but plausible: a 16-food basket in 7 groups, a
7x7 group-level elasticity matrix with standard deviations, group
expenditure elasticities, a two-sex 0-100 population table and three
diet-linked diseases. The script re-derives the conventional-model
expenditure signs for the three demonstration policies and refuses to write
a dataset that does not show the transferability distortion (taxes lowering
total food spending, the subsidy raising it).

Usage: python3 tools/make_desk_data.py [data_dir]
"""
import json
import math
import os
import sys

DATA_DIR = sys.argv[1] if len(sys.argv) > 1 else os.path.join(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data")

# ---------------------------------------------------------------------------
# foods: id, name, group, q g/day, price $/100g, energy kJ/100g,
#        satfat, sugar, salt, pufa, fruit, veg (g/100g), ssb ml/100g
FOODS = [
    ("ssb_regular", "Regular soft drink", "soft_drinks", 150, 0.30, 180, 0, 10.6, 0.02, 0, 0, 0, 100),
    ("cordial", "Cordial & fruit drink", "soft_drinks", 60, 0.40, 185, 0, 10.8, 0.01, 0, 0, 0, 100),
    ("diet_soft", "Diet soft drink", "soft_drinks", 90, 0.32, 5, 0, 0, 0.02, 0, 0, 0, 0),
    ("apples", "Apples & pome fruit", "fruit", 90, 0.45, 220, 0, 10.4, 0, 0, 100, 0, 0),
    ("bananas", "Bananas & tropical fruit", "fruit", 60, 0.35, 370, 0.1, 12.2, 0, 0.1, 100, 0, 0),
    ("leafy_veg", "Leafy vegetables", "vegetables", 70, 0.80, 100, 0, 1.0, 0.02, 0.1, 0, 100, 0),
    ("root_veg", "Root vegetables", "vegetables", 80, 0.40, 310, 0, 2.0, 0.01, 0.1, 0, 100, 0),
    ("butter", "Butter", "dairy_fats", 12, 1.52, 3000, 54, 0.6, 0.8, 1.2, 0, 0, 0),
    ("milk", "Standard milk", "dairy_fats", 350, 0.25, 270, 2.4, 4.7, 0.1, 0.1, 0, 0, 0),
    ("cheese", "Cheese", "dairy_fats", 30, 1.20, 1700, 21, 0.1, 1.8, 0.7, 0, 0, 0),
    ("chocolate", "Chocolate confectionery", "sweets", 25, 1.80, 2200, 18, 56, 0.2, 1.2, 0, 0, 0),
    ("sugar", "Table sugar", "sweets", 25, 0.4825, 1700, 0, 100, 0, 0, 0, 0, 0),
    ("beef", "Beef & lamb", "meat", 90, 1.60, 1050, 6, 0, 0.1, 0.5, 0, 0, 0),
    ("sausages", "Sausages & processed meat", "meat", 50, 1.50, 1300, 12, 1.0, 2.0, 1.0, 0, 0, 0),
    ("bread", "Bread & breakfast cereal", "grains", 180, 0.35, 1000, 0.4, 3.0, 1.2, 1.5, 0, 0, 0),
    ("pasta_cereal", "Pasta & other cereal", "grains", 120, 0.30, 1500, 0.3, 1.0, 0.05, 0.8, 0, 0, 0),
]

GROUPS = ["soft_drinks", "fruit", "vegetables", "dairy_fats", "sweets", "meat", "grains"]

# group-level Marshallian PE matrix, rows = quantity response, cols = price
PE = {
    #                 soft    fruit    veg     dairy   sweets  meat    grains
    "soft_drinks": [-1.00,  -0.010, -0.015,  -0.020,  0.060, -0.010, -0.020],
    "fruit":       [ 0.030, -1.10,   0.040,  -0.020, -0.020, -0.015, -0.025],
    "vegetables":  [ 0.010,  0.050, -1.50,   -0.020, -0.015, -0.020, -0.030],
    "dairy_fats":  [-0.010, -0.015, -0.020,  -0.85,  -0.030, -0.040, -0.030],
    "sweets":      [ 0.050, -0.020, -0.015,  -0.040, -1.15,  -0.020, -0.030],
    "meat":        [-0.010, -0.020, -0.025,  -0.050, -0.020, -0.95,  -0.040],
    "grains":      [-0.015, -0.025, -0.030,  -0.030, -0.025, -0.035, -1.25],
}

# standard deviations, loosely proportional to the magnitudes
PE_SD = {g: [round(abs(e) * 0.08 + 0.002, 6) for e in row] for g, row in PE.items()}

ETA = {  # group expenditure elasticity, sd
    "soft_drinks": (0.794, 0.061),
    "fruit": (0.816, 0.034),
    "vegetables": (0.963, 0.035),
    "dairy_fats": (0.615, 0.050),
    "sweets": (1.415, 0.124),
    "meat": (1.420, 0.040),
    "grains": (1.009, 0.056),
}

DISEASES = {
    # id: (dw, incidence(a), case_fatality(a), remission(a), prevalence(a))
    "cvd": (0.08,
            lambda a: 4e-5 * math.exp(0.080 * a),
            lambda a: 0.010 * math.exp(0.030 * a),
            lambda a: 0.0,
            lambda a: min(0.25, 5e-5 * math.exp(0.090 * a))),
    "diabetes": (0.05,
                 lambda a: 1.5e-4 * math.exp(0.050 * a),
                 lambda a: 0.004 * math.exp(0.020 * a),
                 lambda a: 0.0,
                 lambda a: min(0.20, 2e-4 * math.exp(0.065 * a))),
    "bowel_cancer": (0.12,
                     lambda a: 8e-6 * math.exp(0.085 * a),
                     lambda a: 0.080,
                     lambda a: 0.050,
                     lambda a: min(0.05, 4e-6 * math.exp(0.090 * a))),
}

RR_LINKS = [
    # disease, risk factor, rr per unit, lag start, lag end
    ("cvd", "bmi", 1.06, 0, 5),
    ("cvd", "salt", 1.12, 0, 5),
    ("cvd", "fruit", 0.9990, 0, 5),
    ("cvd", "veg", 0.9988, 0, 5),
    ("cvd", "pufa", 0.97, 0, 5),
    ("diabetes", "bmi", 1.10, 0, 5),
    ("diabetes", "ssb", 1.0015, 0, 5),
    ("bowel_cancer", "bmi", 1.03, 10, 30),
    ("bowel_cancer", "veg", 0.9992, 10, 30),
    ("bowel_cancer", "fruit", 0.9995, 10, 30),
]


# ---------------------------------------------------------------------------
# sign checks: re-derive the conventional pipeline independently

def expand_matrix(scalar):
    children = {g: [f for f in FOODS if f[2] == g] for g in GROUPS}
    order = [f for g in GROUPS for f in children[g]]
    exp = {f[0]: f[3] * f[4] / 100.0 for f in FOODS}
    shares = {}
    for g in GROUPS:
        total = sum(exp[f[0]] for f in children[g])
        for f in children[g]:
            shares[f[0]] = exp[f[0]] / total
    n = len(order)
    m = [[0.0] * n for _ in range(n)]
    for i, fi in enumerate(order):
        gi = fi[2]
        for j, fj in enumerate(order):
            gj = fj[2]
            parent = PE[gi][GROUPS.index(gj)]
            if gi == gj:
                k = len(children[gi])
                own = parent if k == 1 else parent * (1 + k * scalar)
                if i == j:
                    m[i][j] = own
                else:
                    m[i][j] = shares[fj[0]] / (1 - shares[fi[0]]) * (abs(own) - abs(parent))
            else:
                m[i][j] = parent * shares[fj[0]]
    return order, m


def policy_deltas(order, policy):
    deltas = []
    for f in order:
        d = 0.0
        if policy == "safa_tax":
            d = 2.0 * f[6] / (100.0 * f[4])
        elif policy == "sugar_tax":
            d = 0.4 * f[7] / (100.0 * f[4])
        elif policy == "fv_subsidy":
            d = -0.20 if f[2] in ("fruit", "vegetables") else 0.0
        deltas.append(d)
    return deltas


def conventional_run(policy, scalar=0.025):
    order, m = expand_matrix(scalar)
    deltas = policy_deltas(order, policy)
    e0 = sum(f[3] * f[4] / 100.0 for f in order)
    shares = [f[3] * f[4] / 100.0 / e0 for f in order]
    dfpi = sum(w * d for w, d in zip(shares, deltas))
    e1 = 0.0
    floored = 0
    for i, f in enumerate(order):
        q = f[3] * (1.0 + sum(m[i][j] * deltas[j] for j in range(len(order))))
        if q < 0:
            q = 0.0
            floored += 1
        e1 += q * f[4] * (1.0 + deltas[i]) / 100.0
    return dfpi, (e1 - e0) / e0, floored


def check_signs():
    ok = True
    for policy, fpi_sign, exp_sign in [("safa_tax", 1, -1), ("sugar_tax", 1, -1),
                                       ("fv_subsidy", -1, 1)]:
        dfpi, dexp, floored = conventional_run(policy)
        status = (math.copysign(1, dfpi) == fpi_sign
                  and math.copysign(1, dexp) == exp_sign and floored == 0)
        ok = ok and status
        print(f"  {policy:10s}: dFPI {dfpi * 100:+.2f}%  conventional dE {dexp * 100:+.2f}% "
              f"floored={floored} {'ok' if status else 'WRONG SIGN'}")
    return ok


# ---------------------------------------------------------------------------

def write_csv(name, header, rows):
    path = os.path.join(DATA_DIR, name)
    with open(path, "w") as out:
        out.write(",".join(header) + "\n")
        for row in rows:
            out.write(",".join(str(c) for c in row) + "\n")
    print(f"  wrote {path} ({len(rows)} rows)")


def population_rows():
    rows = []
    for sex, mort_scale, count_scale in [("male", 1.00, 33000), ("female", 0.85, 33500)]:
        for age in range(0, 101):
            count = count_scale * max(0.0, 1.0 - (age / 102.0) ** 1.6)
            mortality = min(0.7, 4e-4 * math.exp(0.085 * age) * mort_scale)
            if age == 0:
                mortality += 0.004
            pyld = min(0.5, 0.02 + 0.0018 * age)
            rows.append((sex, age, round(count, 1), round(mortality, 6), round(pyld, 4)))
    return rows


def disease_rows():
    rows = []
    for disease, (dw, inc, cf, rem, prev) in DISEASES.items():
        for sex, scale in [("male", 1.0), ("female", 0.9)]:
            for age in range(0, 101):
                rows.append((disease, age, sex,
                             round(inc(age) * scale, 8), round(cf(age), 6),
                             round(rem(age), 4), round(prev(age) * scale, 6), dw))
    return rows


def scenario_config(policy):
    return {
        "name": policy,
        "data": {
            "foods": "../foods.csv",
            "pe_matrix": "../pe_matrix.csv",
            "pe_matrix_sd": "../pe_matrix_sd.csv",
            "group_mapping": "../group_mapping.csv",
            "expenditure_elasticities": "../expenditure_elasticities.csv",
            "population": "../population.csv",
            "diseases": "../diseases.csv",
            "rr_links": "../rr_links.csv",
        },
        "policy": policy,
        "rescale": {"mode": "tfee"},
        "tfee_distribution": {"kind": "beta", "alpha": 6, "beta": 2},
        "disaggregation": {"scalar": 0.025, "sd": 0.0125},
        "anthro": {"mean_height_m": 1.69, "baseline_bmi": 27.5,
                   "rho_kj_per_day_per_kg": 100.0},
        "discount_rates": [0.0, 0.03],
        "expenditure_convention": "post_policy_prices",
    }


def main():
    print("sign checks (conventional model must contradict economic expectation):")
    if not check_signs():
        print("sign checks FAILED; adjust the matrix or basket")
        sys.exit(1)

    os.makedirs(DATA_DIR, exist_ok=True)
    os.makedirs(os.path.join(DATA_DIR, "scenarios"), exist_ok=True)

    write_csv("foods.csv",
              ["id", "name", "group_id", "quantity_g_per_day", "price_per_100g",
               "energy_kj_per_100g", "satfat_g_per_100g", "sugar_g_per_100g",
               "salt_g_per_100g", "pufa_g_per_100g", "fruit_g_per_100g",
               "veg_g_per_100g", "ssb_ml_per_100g"],
              [(f[0], f[1], f[2], f[3], f[4], f[5], f[6], f[7], f[8], f[9], f[10], f[11], f[12])
               for f in FOODS])

    write_csv("pe_matrix.csv", ["id"] + GROUPS,
              [[g] + PE[g] for g in GROUPS])
    write_csv("pe_matrix_sd.csv", ["id"] + GROUPS,
              [[g] + PE_SD[g] for g in GROUPS])
    write_csv("group_mapping.csv", ["child_id", "parent_id"],
              [(f[0], f[2]) for f in FOODS])
    write_csv("expenditure_elasticities.csv", ["group_id", "eta", "sd"],
              [(g, ETA[g][0], ETA[g][1]) for g in GROUPS])
    write_csv("population.csv", ["sex", "age", "count", "mortality", "pyld"],
              population_rows())
    write_csv("diseases.csv",
              ["disease_id", "age", "sex", "incidence", "case_fatality", "remission",
               "prevalence", "dw"],
              disease_rows())
    write_csv("rr_links.csv",
              ["disease_id", "risk_factor", "rr_per_unit", "lag_start", "lag_end"],
              RR_LINKS)

    for policy in ("safa_tax", "sugar_tax", "fv_subsidy"):
        path = os.path.join(DATA_DIR, "scenarios", f"{policy}.json")
        with open(path, "w") as out:
            json.dump(scenario_config(policy), out, indent=2)
            out.write("\n")
        print(f"  wrote {path}")


if __name__ == "__main__":
    main()
