#!/usr/bin/env python3
"""Build a 28x28 IDX digit corpus without network access.

Renders digit glyphs (0-9) from parametric stroke paths, applies random
affine jitter, thickness, intensity and pixel noise, and writes the four
conventional IDX files (train-images-idx3-ubyte, ...) the simulator
consumes. Real MNIST files are drop-in replacements for the output of this
script. Requires numpy only; output is deterministic for a fixed seed.
"""

import argparse
import struct
from pathlib import Path

import numpy as np

IMAGES_MAGIC = 0x00000803
LABELS_MAGIC = 0x00000801
SIZE = 28


def _arc(cx, cy, rx, ry, t0, t1, n=60):
    t = np.linspace(t0, t1, n)
    return np.stack([cx + rx * np.cos(t), cy + ry * np.sin(t)], axis=1)


def _line(x0, y0, x1, y1, n=40):
    return np.linspace([x0, y0], [x1, y1], n)


def digit_paths(d):
    """Stroke polylines for one digit on the unit square (y grows down)."""
    if d == 0:
        return [_arc(0.5, 0.5, 0.30, 0.40, 0, 2 * np.pi, 90)]
    if d == 1:
        return [_line(0.35, 0.26, 0.55, 0.10), _line(0.55, 0.10, 0.55, 0.90)]
    if d == 2:
        return [
            _arc(0.5, 0.32, 0.27, 0.22, -np.pi, 0.25 * np.pi, 50),
            _line(0.67, 0.47, 0.22, 0.90),
            _line(0.22, 0.90, 0.78, 0.90),
        ]
    if d == 3:
        return [
            _arc(0.46, 0.29, 0.25, 0.19, -0.85 * np.pi, 0.5 * np.pi, 50),
            _arc(0.46, 0.69, 0.28, 0.22, -0.5 * np.pi, 0.85 * np.pi, 50),
        ]
    if d == 4:
        return [
            _line(0.60, 0.10, 0.20, 0.62),
            _line(0.20, 0.62, 0.82, 0.62),
            _line(0.62, 0.30, 0.62, 0.92),
        ]
    if d == 5:
        return [
            _line(0.72, 0.10, 0.28, 0.10),
            _line(0.28, 0.10, 0.26, 0.44),
            _arc(0.45, 0.65, 0.28, 0.24, -0.5 * np.pi, 0.75 * np.pi, 60),
        ]
    if d == 6:
        return [
            _arc(0.58, 0.28, 0.30, 0.26, 0.8 * np.pi, 1.35 * np.pi, 40),
            _arc(0.48, 0.68, 0.22, 0.21, 0, 2 * np.pi, 70),
        ]
    if d == 7:
        return [_line(0.20, 0.12, 0.80, 0.12), _line(0.80, 0.12, 0.42, 0.90)]
    if d == 8:
        return [
            _arc(0.50, 0.30, 0.20, 0.17, 0, 2 * np.pi, 60),
            _arc(0.50, 0.70, 0.24, 0.20, 0, 2 * np.pi, 70),
        ]
    return [
        _arc(0.52, 0.32, 0.22, 0.20, 0, 2 * np.pi, 60),
        _line(0.74, 0.32, 0.66, 0.90),
    ]


_PIXEL_GRID = np.stack(
    [g.ravel() for g in np.meshgrid(np.arange(SIZE), np.arange(SIZE), indexing="xy")],
    axis=1,
).astype(np.float64)  # (784, 2) as (x, y)


def render(digit, rng):
    """One 28x28 uint8 image: jittered affine of the glyph, soft strokes."""
    pts = np.concatenate(digit_paths(digit))
    angle = rng.uniform(-0.18, 0.18)
    scale = rng.uniform(0.85, 1.10)
    shear = rng.uniform(-0.12, 0.12)
    rot = np.array([[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]])
    shr = np.array([[1.0, shear], [0.0, 1.0]])
    xy = (pts - 0.5) @ (rot @ shr).T * scale + 0.5
    xy += rng.uniform(-0.07, 0.07, size=2)
    coords = xy * (SIZE - 1)

    # distance field from every pixel to the stroke points
    diff = _PIXEL_GRID[:, None, :] - coords[None, :, :]
    dist2 = np.min(np.einsum("pqc,pqc->pq", diff, diff), axis=1)
    radius = rng.uniform(1.1, 1.9)
    img = np.where(dist2 <= radius * radius, 255.0, 0.0).reshape(SIZE, SIZE)

    img *= rng.uniform(0.8, 1.0)
    img += rng.normal(0.0, 5.0, size=img.shape)
    return np.clip(img, 0.0, 255.0).astype(np.uint8)


def build_split(count, rng):
    images = np.empty((count, SIZE, SIZE), dtype=np.uint8)
    labels = np.empty(count, dtype=np.uint8)
    for i in range(count):
        labels[i] = i % 10
        images[i] = render(labels[i], rng)
    return images, labels


def write_idx_images(path, images):
    with open(path, "wb") as f:
        f.write(struct.pack(">IIII", IMAGES_MAGIC, len(images), SIZE, SIZE))
        f.write(images.tobytes())


def write_idx_labels(path, labels):
    with open(path, "wb") as f:
        f.write(struct.pack(">II", LABELS_MAGIC, len(labels)))
        f.write(labels.tobytes())


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, required=True, help="output directory")
    parser.add_argument("--train-count", type=int, default=72000)
    parser.add_argument("--test-count", type=int, default=7200)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    train_images, train_labels = build_split(args.train_count, rng)
    test_images, test_labels = build_split(args.test_count, rng)

    args.out.mkdir(parents=True, exist_ok=True)
    write_idx_images(args.out / "train-images-idx3-ubyte", train_images)
    write_idx_labels(args.out / "train-labels-idx1-ubyte", train_labels)
    write_idx_images(args.out / "t10k-images-idx3-ubyte", test_images)
    write_idx_labels(args.out / "t10k-labels-idx1-ubyte", test_labels)
    print(
        f"wrote {len(train_images)} train / {len(test_images)} test images "
        f"(10 classes) to {args.out}"
    )


if __name__ == "__main__":
    main()
