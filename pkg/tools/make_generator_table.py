"""Regenerate ``src/ycalc/data/generator_images.json``.

Images are written in the diagram text format; contracts are computed here
from closed-form matrices, independently of the evaluator.
"""

from __future__ import annotations

import json
import math
import re
from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parents[1] / "src" / "ycalc" / "data" / "generator_images.json"

H = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
Zp = np.diag([1, -1])
Xp = np.array([[0, 1], [1, 0]])


def rot(a: float) -> np.ndarray:
    return np.array([[math.cos(a / 2), -math.sin(a / 2)], [math.sin(a / 2), math.cos(a / 2)]])


def mat(m) -> dict:
    m = np.asarray(m, dtype=complex)
    return {"re": np.round(m.real, 15).tolist(), "im": np.round(m.imag, 15).tolist()}


def zxr_box_image(k: int) -> str:
    """Z-pi then H, ``k mod 4`` times, with a -1 scalar when ``k >= 4``."""
    lines = ["calculus ZX_r", "input i", "output o"]
    prev = "i"
    for j in range(k % 4):
        lines += [f"gspider z{j} pi", f"hbox h{j}", f"wire {prev} z{j}", f"wire z{j} h{j}"]
        prev = f"h{j}"
    lines.append(f"wire {prev} o")
    if k >= 4:
        # exp(i pi) = green pi state into red pi effect, times 1/sqrt2
        lines += ["gspider m0 pi", "rspider m1 pi", "wire m0 m1",
                  "gspider s0", "rspider s1", "wire s0 s1", "wire s0 s1", "wire s0 s1"]
    return "\n".join(lines)


def main() -> None:
    rows = []
    for k in range(8):
        rows.append({
            "translation": "Y2ZXR",
            "generator": f"ybox b {k}pi/2; wire in0 b; wire b out0",
            "image": zxr_box_image(k),
            "contract": {"law": "tensor", **mat(rot(k * math.pi / 2))},
        })
    for name, colour, m in (("pidot-g", "gspider", Zp), ("pidot-r", "rspider", Xp)):
        rows.append({
            "translation": "Y2ZXR",
            "generator": f"{name} p; wire in0 p; wire p out0",
            "image": f"calculus ZX_r\n{colour} p pi\nwire in0 p\nwire p out0",
            "contract": {"law": "tensor", **mat(m)},
        })
    rows.append({
        "translation": "Y2ZXR",
        "generator": "hbox h; wire in0 h; wire h out0",
        "image": "calculus ZX_r\nhbox h\nwire in0 h\nwire h out0",
        "contract": {"law": "tensor", **mat(H)},
    })
    for src, m in (("calculus ZX_r\nhbox h\nwire in0 h\nwire h out0", H),
                   ("calculus ZX_r\ngspider p pi\nwire in0 p\nwire p out0", Zp),
                   ("calculus ZX_r\nrspider p pi\nwire in0 p\nwire p out0", Xp)):
        img = src.replace("calculus ZX_r\n", "").replace("gspider p pi", "pidot-g p").replace(
            "rspider p pi", "pidot-r p")
        rows.append({"translation": "ZXR2Y", "generator": src, "image": img,
                     "contract": {"law": "tensor", **mat(m)}})
    for a in (math.pi / 3, 1.0, 2.5):
        rows.append({
            "translation": "Y2ZX",
            "generator": f"ybox b {a!r}; wire in0 b; wire b out0",
            "image": None,
            "contract": {"law": "tensor", **mat(rot(a))},
        })
        rows.append({
            "translation": "Y2ZX",
            "generator": f"yboxflip b {a!r}; wire in0 b; wire b out0",
            "image": None,
            "contract": {"law": "tensor", **mat(rot(a).T)},
        })
    for colour, a in (("gspider", math.pi / 2), ("gspider", 0.7), ("rspider", math.pi / 4), ("rspider", 2.0)):
        if colour == "gspider":
            m = np.diag([1, np.exp(1j * a)])
        else:
            m = H @ np.diag([1, np.exp(1j * a)]) @ H
        rows.append({
            "translation": "ZX2Y",
            "generator": f"calculus ZX\n{colour} p {a!r}\nwire in0 p\nwire p out0",
            "image": None,
            "contract": {"law": "block", **mat(m)},
        })
    rows.append({
        "translation": "ZX2Y",
        "generator": "calculus ZX\nhbox h\nwire in0 h\nwire h out0",
        "image": None,
        "contract": {"law": "block", **mat(H)},
    })
    for r in rows:
        for key in ("generator", "image"):
            if r[key] is not None:
                r[key] = [ln.strip() for part in r[key].split("\n") for ln in part.split(";") if ln.strip()]
    text = json.dumps({"entries": rows}, indent=1)
    # one matrix row per line
    text = re.sub(r"\[\s+([-0-9.e, \n]+?)\s+\]", lambda m: "[" + " ".join(m.group(1).split()) + "]", text)
    OUT.write_text(text + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
