"""JSON documents for algebra elements, families, reduced families and reports.

Rationals are written as ``"p/q"`` strings and every mapping is emitted with
sorted keys, so the same object always produces byte-identical output.
"""

from __future__ import annotations

import json
from fractions import Fraction

from sympy.polys.domains import QQ

from .algebra.basis import MixedGenerator, mixed_basis
from .algebra.commutative import CommPoly, classical_ring, rank_of
from .algebra.uea import UEAElement


def rational(c) -> str:
    f = Fraction(str(c)) if not isinstance(c, (int, Fraction)) else Fraction(c)
    return f"{f.numerator}/{f.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s)


def _runs(mono):
    """Collapse a nondecreasing index tuple into ``[(index, exponent)]``."""
    out: list[list[int]] = []
    for g in mono:
        if out and out[-1][0] == g:
            out[-1][1] += 1
        else:
            out.append([g, 1])
    return out


def uea_to_json(a: UEAElement) -> dict:
    gens = mixed_basis(a.n).generators
    terms = []
    for (m, ua, db, ec), coef in sorted(a.terms.items()):
        terms.append(
            {
                "coefficient": rational(coef),
                "factors": [[gens[g].kind, gens[g].i, gens[g].j, e] for g, e in _runs(m)],
                "spectral": {"u": ua, "D": db, "eps": ec},
            }
        )
    return {"ring": "quantum", "n": a.n, "terms": terms}


def uea_from_json(doc: dict) -> UEAElement:
    n = doc["n"]
    basis = mixed_basis(n)
    terms = {}
    for t in doc["terms"]:
        mono = []
        for kind, i, j, e in t["factors"]:
            mono += [basis.index[MixedGenerator(kind, i, j)]] * e
        sp = t["spectral"]
        key = (tuple(mono), sp.get("u", 0), sp.get("D", 0), sp.get("eps", 0))
        if list(key[0]) != sorted(key[0]):
            raise ValueError("factors are not in normal order")
        terms[key] = terms.get(key, Fraction(0)) + parse_rational(t["coefficient"])
    return UEAElement(n, terms)


def poly_to_json(f: CommPoly, n: int | None = None) -> dict:
    n = rank_of(f) if n is None else n
    R = classical_ring(n)
    nn = n * n
    terms = []
    for mon, coef in sorted(f.items()):
        factors = []
        for idx in range(nn):
            if mon[idx]:
                _, i, j = R.var_label(idx)
                factors.append(["x", i, j, mon[idx]])
        terms.append(
            {
                "coefficient": rational(coef),
                "factors": factors,
                "spectral": {"lambda": mon[R.lam_index], "eps": mon[R.eps_index], "u": mon[R.u_index]},
            }
        )
    return {"ring": "classical", "n": n, "terms": terms}


def poly_from_json(doc: dict) -> CommPoly:
    n = doc["n"]
    R = classical_ring(n)
    out = {}
    for t in doc["terms"]:
        mon = [0] * len(R.ring.gens)
        for kind, i, j, e in t["factors"]:
            if kind != "x":
                raise ValueError(f"unexpected factor kind {kind!r} in a classical polynomial")
            mon[R.x_index(i, j)] += e
        sp = t["spectral"]
        mon[R.lam_index] = sp.get("lambda", 0)
        mon[R.eps_index] = sp.get("eps", 0)
        mon[R.u_index] = sp.get("u", 0)
        c = parse_rational(t["coefficient"])
        key = tuple(mon)
        out[key] = out.get(key, QQ(0)) + QQ(c.numerator, c.denominator)
    return R.ring.from_dict(out)


def element_to_json(x, n: int | None = None) -> dict:
    if isinstance(x, UEAElement):
        return uea_to_json(x)
    return poly_to_json(x, n)


def element_from_json(doc: dict):
    if doc["ring"] == "quantum":
        return uea_from_json(doc)
    if doc["ring"] == "classical":
        return poly_from_json(doc)
    raise ValueError(f"unknown ring {doc['ring']!r}")


def family_to_json(F) -> dict:
    levels = {}
    for k in F.levels():
        levels[str(k)] = {
            "leading_eps": F.leading_eps.get(k),
            "entries": {str(i): element_to_json(v, F.n) for i, v in F.level(k).items()},
        }
    return {"kind": "graded-family", "n": F.n, "mode": F.mode, "levels": levels}


def family_from_json(doc: dict):
    from .spectral import GradedFamily

    entries, leading = {}, {}
    for k, block in doc["levels"].items():
        leading[int(k)] = block["leading_eps"]
        for i, el in block["entries"].items():
            entries[(int(k), int(i))] = element_from_json(el)
    return GradedFamily(n=doc["n"], mode=doc["mode"], entries=entries, leading_eps=leading)


def character_to_json(chi) -> dict:
    return {str(g): rational(v) for g, v in chi.values.items()}


def reduced_to_json(R) -> dict:
    blocks = {}
    for k in sorted(R.denominators):
        blocks[str(k)] = {
            "numerators": {str(i): uea_to_json(v) for (kk, i), v in sorted(R.numerators.items()) if kk == k},
            "denominator": uea_to_json(R.denominators[k]),
            "denominator_index": R.denominator_index[k],
            "character": character_to_json(R.characters[k]),
        }
    return {"kind": "reduced-family", "n": R.n, "levels": blocks}


def report_to_json(report) -> dict:
    return report.to_dict() if hasattr(report, "to_dict") else dict(report)


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def write(doc, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))
