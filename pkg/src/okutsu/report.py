"""JSON-ready reports and their plain-text rendering."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional

from .chains import MLVChain, Report, global_invariants, slopes_and_secondary, step_invariants, verify_chain
from .frames import (frame_from_chain, is_tame, main_invariant, ramification_polygon,
                     sequence_from_frame)
from .poly import Poly, format_poly, is_separable
from .values import fmt_value
from .vf import RootValuation


def _fmt(v):
    return None if v is None else fmt_value(v)


def chain_report(F: Poly, chain: MLVChain, vF: Optional[RootValuation] = None) -> dict:
    """The full report: invariants, levels, delta, omega, multiset and checks."""
    vF = RootValuation(F) if vF is None else vF
    e, f, d, depth = global_invariants(chain)
    checks = verify_chain(chain, vF=vF)
    pairs, lam_ok = slopes_and_secondary(chain)
    checks.add("gamma_i/m_i = lambda_0/m_0 + ... + lambda_i/m_i", lam_ok)

    deltas = [None] * (depth + 1)
    delta = omega = None
    multiset = []
    if F.degree > 1:
        frame = frame_from_chain(chain)
        delta, per_level = main_invariant(frame, vF)
        deltas = [lv for lv in per_level] + [None]
        if is_separable(F):
            ram = ramification_polygon(vF)
            omega = ram.omega
            multiset = [[fmt_value(v), k] for v, k in ram.multiset]
            for c in ram.checks(F.degree).checks:
                checks.checks.append(c)
            if delta is not None:
                checks.add("delta <= omega (Krasner)", delta <= omega,
                           f"{fmt_value(delta)} vs {fmt_value(omega)}")
    levels = []
    for rec, dl in zip(chain.levels(), deltas):
        out = rec.to_json()
        out["step"] = chain.steps[rec.index].kind
        out["delta"] = None if dl is None else _fmt(dl.value)
        if dl is not None:
            out["delta_attained"] = dl.attained
            if not dl.attained:
                out["delta_prefix"] = [fmt_value(v) for v in dl.prefix]
        st = chain.steps[rec.index + 1] if rec.index < depth else None
        if st is not None and st.family is not None:
            out["family"] = st.family.to_json()
        levels.append(out)
    return {
        "input": {"field": F.field.descriptor(), "F": format_poly(F)},
        "invariants": {"e": e, "f": f, "d": d, "depth": depth},
        "levels": levels,
        "delta": _fmt(delta),
        "omega": _fmt(omega),
        "multiset": multiset,
        "checks": checks.to_json(),
    }


def observed_values(F: Poly, chain: MLVChain, vF: RootValuation) -> Dict[str, object]:
    """The values compared against a registry record, in its string conventions."""
    e, f, d, depth = global_invariants(chain)
    out: Dict[str, object] = {
        "degrees": chain.degrees, "gammas": [fmt_value(g) for g in chain.gammas],
        "kinds": chain.kinds(), "steps": [step_invariants(chain, i) for i in range(depth)],
        "depth": depth, "e": e, "f": f, "d": d,
        "lambdas": [fmt_value(l) for _, l in slopes_and_secondary(chain)[0]],
        "gamma0": fmt_value(chain.gammas[0]),
        "gamma1": fmt_value(chain.gammas[1]) if depth >= 1 else None,
        "tame": is_tame(chain)[0],
    }
    delta, per = main_invariant(frame_from_chain(chain), vF)
    out["delta"] = _fmt(delta)
    out["delta_seq"] = [_fmt(lv.value) for lv in per]
    out["attained"] = [lv.attained for lv in per]
    ram = ramification_polygon(vF)
    out["omega"] = fmt_value(ram.omega)
    out["multiset"] = [(fmt_value(v), k) for v, k in ram.multiset]
    n, m = F.degree, chain.degrees
    out["t"] = [n // m[i] - n // m[i + 1] for i in range(depth)]
    return out


def _norm(key, v):
    if key == "multiset":
        return sorted((Fraction(a), k) for a, k in v)
    if key == "steps":
        return [tuple(s) for s in v]
    return v


def compare_expected(observed: Dict[str, object], expected: Dict[str, tuple]) -> Report:
    rep = Report()
    for key, (want, tag) in expected.items():
        got = observed.get(key)
        ok = _norm(key, got) == _norm(key, want)
        rep.add(f"expected {key} {tag}", ok, None if ok else f"expected {want!r}, got {got!r}")
    return rep


# ---------------------------------------------------------------------------------
# text rendering


def render_pretty(obj, indent: int = 0) -> str:
    """Indented key: value text, with check lists shown one per line."""
    pad = "  " * indent
    lines: List[str] = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if k == "checks" and isinstance(v, list):
                lines.append(f"{pad}checks:")
                for c in v:
                    w = f"  [{c['witness']}]" if c.get("witness") else ""
                    lines.append(f"{pad}  {c['status'].upper():4} {c['name']}{w}")
            elif isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(render_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, dict):
                first = True
                for k, v in item.items():
                    lead = "- " if first else "  "
                    lines.append(f"{pad}{lead}{k}: {_inline(v)}")
                    first = False
            else:
                lines.append(f"{pad}- {_inline(item)}")
    else:
        lines.append(pad + _inline(obj))
    return "\n".join(lines)


def _flat(v) -> bool:
    if isinstance(v, dict):
        return all(not isinstance(x, (dict, list)) for x in v.values())
    return all(not isinstance(x, dict) for x in v)


def _inline(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, dict):
        return ", ".join(f"{k}={_inline(x)}" for k, x in v.items())
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    return str(v)
