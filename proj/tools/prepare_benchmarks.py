#!/usr/bin/env python3
"""Build data/breast_cancer.csv and data/diabetes.csv from redistributable copies.

Breast Cancer (Wisconsin, original): 699 rows, 9 attributes, the MASS `biopsy`
table as shipped in the `pydataset` sdist. The 16 missing bare-nuclei cells are
filled with the column median. Benign rows are the target class.

Diabetes (Pima Indians): 768 rows, 8 attributes, the KEEL `pima` table as
shipped in the `keel-ds` wheel. tested_negative rows (500) are the target class.

Usage: prepare_benchmarks.py <pydataset sdist> <keel-ds wheel> <out dir>
"""
import csv
import io
import statistics
import sys
import tarfile
import zipfile


def breast_cancer(sdist_path):
    with tarfile.open(sdist_path) as outer:
        member = next(m for m in outer.getmembers() if m.name.endswith("resources.tar.gz"))
        inner_bytes = outer.extractfile(member).read()
    with tarfile.open(fileobj=io.BytesIO(inner_bytes)) as inner:
        raw = inner.extractfile("resources/rdata/csv/MASS/biopsy.csv").read().decode()
    rows = list(csv.reader(io.StringIO(raw)))[1:]
    feats = [r[2:11] for r in rows]
    labels = ["target" if r[11] == "benign" else "outlier" for r in rows]
    for j in range(9):
        present = [float(f[j]) for f in feats if f[j] != "NA"]
        med = statistics.median(present)
        for f in feats:
            if f[j] == "NA":
                f[j] = repr(med) if med != int(med) else str(int(med))
    header = ["clump", "size_unif", "shape_unif", "adhesion", "epi_size",
              "bare_nuclei", "chromatin", "nucleoli", "mitoses", "label"]
    return header, [f + [l] for f, l in zip(feats, labels)]


def diabetes(wheel_path):
    with zipfile.ZipFile(wheel_path) as z:
        raw = z.read("keel_ds/data/balanced/raw/pima.dat").decode()
    out = []
    for line in raw.splitlines():
        cells = line.strip().split(",")
        if len(cells) != 9:
            continue
        label = "target" if cells[8] == "tested_negative" else "outlier"
        out.append(cells[:8] + [label])
    header = ["preg", "plas", "pres", "skin", "insu", "mass", "pedi", "age", "label"]
    return header, out


def write(path, header, rows):
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


if __name__ == "__main__":
    sdist, wheel, out_dir = sys.argv[1:4]
    write(f"{out_dir}/breast_cancer.csv", *breast_cancer(sdist))
    write(f"{out_dir}/diabetes.csv", *diabetes(wheel))
