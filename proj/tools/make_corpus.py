#!/usr/bin/env python3
"""Builds the desk-scale natural-photo test corpus from scikit-image samples.

Writes 128x128 8-bit PGM crops (P5) into the output directory. Crops are taken
at fixed positions so the corpus is reproducible.
"""
import argparse
import pathlib

import numpy as np
from skimage import color, data, img_as_ubyte

SOURCES = [
    "camera", "astronaut", "chelsea", "coffee", "rocket", "clock",
    "retina", "hubble_deep_field", "moon", "coins", "grass",
    "gravel", "brick", "immunohistochemistry", "cell", "page",
]
CROP = 128


def gray(name: str) -> np.ndarray:
    img = getattr(data, name)()
    if img.ndim == 3:
        img = color.rgb2gray(img[..., :3])
    return img_as_ubyte(img)


def crops(img: np.ndarray, count: int):
    h, w = img.shape
    for k in range(count):
        # spread crops along the diagonal band of the image
        t = (k + 1) / (count + 1)
        r = int((h - CROP) * t)
        c = int((w - CROP) * (1 - t) if k % 2 else (w - CROP) * t)
        yield img[r:r + CROP, c:c + CROP]


def write_pgm(path: pathlib.Path, img: np.ndarray) -> None:
    h, w = img.shape
    path.write_bytes(f"P5\n{w} {h}\n255\n".encode() + img.astype(np.uint8).tobytes())


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("out", type=pathlib.Path)
    ap.add_argument("--count", type=int, default=50)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    per = -(-args.count // len(SOURCES))
    written = 0
    for name in SOURCES:
        for k, crop in enumerate(crops(gray(name), per)):
            if written == args.count:
                return
            write_pgm(args.out / f"{name}_{k}.pgm", crop)
            written += 1


if __name__ == "__main__":
    main()
