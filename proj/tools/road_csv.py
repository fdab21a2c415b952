#!/usr/bin/env python3
"""Convert a road-centreline export into the edges.csv/coords.csv pair read by
`ngwp dataset road`.

The export needs a node table (an id column and either lon/lat or x/y columns)
and a segment table (two columns naming the end nodes). Node ids may be any
strings; they are renumbered 1..N in order of first appearance in the node
table. Longitude/latitude is projected to kilometres with an equirectangular
projection about the mean latitude, which is accurate at city scale.
"""

import argparse
import csv
import math
import sys
from pathlib import Path


def read_rows(path):
    with open(path, newline="", encoding="utf-8-sig") as fh:
        return list(csv.DictReader(fh))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nodes", required=True, type=Path)
    ap.add_argument("--segments", required=True, type=Path)
    ap.add_argument("--id-col", default="id")
    ap.add_argument("--x-col", default="lon")
    ap.add_argument("--y-col", default="lat")
    ap.add_argument("--lonlat", action="store_true", help="project lon/lat degrees to km")
    ap.add_argument("--from-col", default="from")
    ap.add_argument("--to-col", default="to")
    ap.add_argument("--out-dir", default=Path("."), type=Path)
    args = ap.parse_args()

    nodes = read_rows(args.nodes)
    index, xs, ys = {}, [], []
    for row in nodes:
        key = row[args.id_col]
        if key in index:
            continue
        index[key] = len(index) + 1
        xs.append(float(row[args.x_col]))
        ys.append(float(row[args.y_col]))
    if args.lonlat:
        radius_km = 6371.0088
        lat0 = math.radians(sum(ys) / len(ys))
        xs = [radius_km * math.radians(x) * math.cos(lat0) for x in xs]
        ys = [radius_km * math.radians(y) for y in ys]

    links = []
    for row in read_rows(args.segments):
        a, b = row[args.from_col], row[args.to_col]
        if a not in index or b not in index:
            sys.exit(f"segment ({a}, {b}) names an unknown node")
        links.append((index[a], index[b]))

    args.out_dir.mkdir(parents=True, exist_ok=True)
    with open(args.out_dir / "coords.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["node", "x", "y"])
        for i, (x, y) in enumerate(zip(xs, ys), start=1):
            w.writerow([i, repr(x), repr(y)])
    with open(args.out_dir / "edges.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["i", "j"])
        w.writerows(links)
    print(f"{len(index)} nodes, {len(links)} segments -> {args.out_dir}")


if __name__ == "__main__":
    main()
