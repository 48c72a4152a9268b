#!/usr/bin/env python3
"""Fetch the six benchmark datasets into a data root (default: ./data).

Each dataset is written in its original UCI layout so the descriptors in
crates/core/descriptors/ can read it unchanged:

    iris/iris.data
    wine/wine.data
    zoo/zoo.data
    abalone/abalone.data
    banknote/data_banknote_authentication.txt
    user-modelling/train.csv, user-modelling/test.csv

The UCI repository is tried first. When it is unreachable, mirrors shipped
inside well-known PyPI packages are used instead (downloaded with
`pip download`, never installed):

    iris, wine  -> scikit-learn's bundled CSVs (iris rows 35 and 38 are
                   restored to the values published in UCI's iris.data)
    zoo         -> orange3 (Orange/datasets/zoo.tab)
    abalone     -> scikit-lego (sklego/data/abalone.zip)

banknote and User Knowledge Modeling have no packaged mirror; they need
network access to archive.ics.uci.edu.

Usage: scripts/fetch_datasets.py [--data-root DIR] [--only NAME ...]
"""

import argparse
import csv
import io
import os
import subprocess
import sys
import tempfile
import urllib.request
import zipfile

UCI = "https://archive.ics.uci.edu/ml/machine-learning-databases"
UCI_STATIC = "https://archive.ics.uci.edu/static/public"

ZOO_TYPES = ["mammal", "bird", "reptile", "fish", "amphibian", "insect", "invertebrate"]
IRIS_NAMES = ["Iris-setosa", "Iris-versicolor", "Iris-virginica"]


def http_get(url, timeout=20):
    with urllib.request.urlopen(url, timeout=timeout) as resp:
        return resp.read()


def pip_wheel(package, workdir):
    """Download a wheel without installing it; return the wheel path."""
    subprocess.run(
        [sys.executable, "-m", "pip", "download", "--no-deps", "--only-binary=:all:",
         "-d", workdir, package],
        check=True, stdout=subprocess.DEVNULL, stderr=subprocess.DEVNULL,
    )
    norm = package.replace("-", "_").lower()
    for name in os.listdir(workdir):
        if name.lower().startswith(norm) and name.endswith(".whl"):
            return os.path.join(workdir, name)
    raise RuntimeError(f"pip download of {package} produced no wheel")


def write(root, rel, text):
    path = os.path.join(root, rel)
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", newline="\n") as f:
        f.write(text)
    print(f"  wrote {path}")


def fmt(v):
    # scikit-lego's copy carries float noise (0.10099999999999999); UCI's
    # raw values have at most four decimals.
    return repr(round(float(v), 6))


# --- per-dataset fetchers -------------------------------------------------

def sklearn_csv(name):
    import sklearn  # noqa: F401 (only for locating the bundled file)
    base = os.path.join(os.path.dirname(sklearn.__file__), "datasets", "data")
    with open(os.path.join(base, name)) as f:
        rows = list(csv.reader(f))
    return rows[1:]


def fetch_iris(root, work):
    try:
        write(root, "iris/iris.data", http_get(f"{UCI}/iris/iris.data").decode())
        return
    except Exception as e:
        print(f"  UCI unreachable ({e}); using scikit-learn mirror")
    rows = sklearn_csv("iris.csv")
    # scikit-learn ships Fisher's corrected rows; restore UCI's published ones.
    rows[34][:4] = ["4.9", "3.1", "1.5", "0.1"]
    rows[37][:4] = ["4.9", "3.1", "1.5", "0.1"]
    lines = [",".join(r[:4] + [IRIS_NAMES[int(r[4])]]) for r in rows]
    write(root, "iris/iris.data", "\n".join(lines) + "\n")


def fetch_wine(root, work):
    try:
        write(root, "wine/wine.data", http_get(f"{UCI}/wine/wine.data").decode())
        return
    except Exception as e:
        print(f"  UCI unreachable ({e}); using scikit-learn mirror")
    rows = sklearn_csv("wine_data.csv")
    lines = [",".join([str(int(r[-1]) + 1)] + r[:-1]) for r in rows]
    write(root, "wine/wine.data", "\n".join(lines) + "\n")


def fetch_zoo(root, work):
    try:
        write(root, "zoo/zoo.data", http_get(f"{UCI}/zoo/zoo.data").decode())
        return
    except Exception as e:
        print(f"  UCI unreachable ({e}); using orange3 mirror")
    whl = zipfile.ZipFile(pip_wheel("orange3", work))
    tab = whl.read("Orange/datasets/zoo.tab").decode().splitlines()[3:]
    lines = []
    for line in tab:
        f = [x.strip() for x in line.split("\t")]
        lines.append(",".join(f[:17] + [str(ZOO_TYPES.index(f[17]) + 1)]))
    write(root, "zoo/zoo.data", "\n".join(lines) + "\n")


def fetch_abalone(root, work):
    try:
        write(root, "abalone/abalone.data", http_get(f"{UCI}/abalone/abalone.data").decode())
        return
    except Exception as e:
        print(f"  UCI unreachable ({e}); using scikit-lego mirror")
    whl = zipfile.ZipFile(pip_wheel("scikit-lego", work))
    inner = zipfile.ZipFile(io.BytesIO(whl.read("sklego/data/abalone.zip")))
    text = inner.read(inner.namelist()[0]).decode()
    rows = list(csv.reader(io.StringIO(text)))[1:]
    lines = [",".join([r[0]] + [fmt(v) for v in r[1:8]] + [r[8]]) for r in rows]
    write(root, "abalone/abalone.data", "\n".join(lines) + "\n")


def fetch_banknote(root, work):
    url = f"{UCI}/00267/data_banknote_authentication.txt"
    write(root, "banknote/data_banknote_authentication.txt", http_get(url).decode())


def fetch_user_modelling(root, work):
    # The UCI archive holds one xls workbook with a training and a test sheet.
    import pandas as pd
    blob = http_get(f"{UCI_STATIC}/257/user+knowledge+modeling.zip")
    z = zipfile.ZipFile(io.BytesIO(blob))
    name = next(n for n in z.namelist() if n.lower().endswith(".xls"))
    book = pd.read_excel(io.BytesIO(z.read(name)), sheet_name=None)
    labels = {"very_low": "very_low", "very low": "very_low", "low": "Low",
              "middle": "Middle", "high": "High"}
    for sheet, out in (("Training_Data", "train.csv"), ("Test_Data", "test.csv")):
        df = book[sheet].iloc[:, :6].dropna()
        lines = ["STG,SCG,STR,LPR,PEG,UNS"]
        for row in df.itertuples(index=False):
            lab = labels[str(row[5]).strip().lower()]
            lines.append(",".join([repr(float(v)) for v in row[:5]] + [lab]))
        write(root, f"user-modelling/{out}", "\n".join(lines) + "\n")


FETCHERS = {
    "iris": fetch_iris,
    "wine": fetch_wine,
    "zoo": fetch_zoo,
    "abalone": fetch_abalone,
    "banknote": fetch_banknote,
    "user-modelling": fetch_user_modelling,
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--data-root", default=os.environ.get("BANDGRID_DATA", "data"))
    ap.add_argument("--only", nargs="*", choices=sorted(FETCHERS))
    args = ap.parse_args()

    failed = []
    with tempfile.TemporaryDirectory() as work:
        for name in args.only or FETCHERS:
            print(f"{name}:")
            try:
                FETCHERS[name](args.data_root, work)
            except Exception as e:
                print(f"  FAILED: {e}")
                failed.append(name)
    if failed:
        print(f"not fetched: {', '.join(failed)}")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
