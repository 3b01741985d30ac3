"""Report files: run an operation, encode its certificate, re-verify later.

A report holds the operation name, a digest of its inputs, the parameters,
the certificate payload, the verification status at emission, and the caps
and seed in force.  ``verify_report`` re-checks a report from the family
files alone.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Sequence

from .arrangement import DEFAULT_MAX_HYPERPLANES, CellComplex, build_arrangement, parse_sign, sign_string
from .family import (
    EscapeCertificate, Family, check_escape_certificate, check_pik, common_point, depth, depth_map,
    helly_point, surrounds,
)
from .geometry import Flat, HalfSpace, as_point, contains
from .io import dec_point, enc, enc_point, family_digest, points_digest, serialize_family
from .theorems import (
    DEFAULT_MAX_BODIES, GroupVerdict, PartitionCertificate, SimplexCertificate, TransversalCertificate,
    Verification, central_point, check_simplex_certificate, discrete_central_point, is_prime_power,
    lemma_surround_certificate, partition_search, transversal_search, tukey_depth, verify_partition,
    verify_transversal,
)

OPERATIONS = ("check-pik", "helly", "depth", "central-point", "partition", "surround",
              "lemma5", "transversal", "tukey")


@dataclass(frozen=True)
class Caps:
    max_hyperplanes: int = DEFAULT_MAX_HYPERPLANES
    max_bodies: int = DEFAULT_MAX_BODIES

    def to_dict(self) -> dict:
        return {"max_hyperplanes": self.max_hyperplanes, "max_bodies": self.max_bodies}


def dump_report(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def input_digest(families: Sequence[Family]) -> str:
    if len(families) == 1:
        return family_digest(families[0])
    text = "".join(serialize_family(f) for f in families)
    return hashlib.sha256(text.encode()).hexdigest()


def _report(op, digest, params, verdict, certificate, verification: Verification, caps: Caps, seed) -> dict:
    return {
        "operation": op,
        "input_digest": digest,
        "parameters": params,
        "verdict": verdict,
        "certificate": certificate,
        "verification": {"ok": verification.ok, "reason": verification.reason},
        "caps": caps.to_dict(),
        "seed": seed,
    }


# -- payload encoders ------------------------------------------------------------------

def _cell_dict(complex: CellComplex, index: int) -> dict:
    c = complex.cells[index]
    return {"sign": sign_string(c.sign), "representative": enc_point(c.representative)}


def encode_escape(cert: EscapeCertificate | None, complex: CellComplex) -> dict | None:
    if cert is None:
        return None
    return {"avoided": sorted(cert.avoided), "path": [_cell_dict(complex, i) for i in cert.path]}


def decode_escape(data: dict, complex: CellComplex) -> EscapeCertificate:
    path = []
    for step in data["path"]:
        if not complex.has_sign(parse_sign(step["sign"])):
            raise ValueError(f"no cell with sign {step['sign']}")
        path.append(complex.cell(step["sign"]).index)
    return EscapeCertificate(tuple(path), frozenset(data["avoided"]))


def _enc_halfspace(h: HalfSpace) -> dict:
    return {"a": enc_point(h.normal), "b": enc(h.offset)}


def _dec_halfspace(d: dict) -> HalfSpace:
    return HalfSpace(dec_point(d["a"]), as_point([d["b"]])[0])


def _enc_groups(groups: Sequence[GroupVerdict]) -> list[dict]:
    out = []
    for g in groups:
        item = {"members": list(g.members), "kind": g.kind}
        if g.witness is not None:
            item["witness"] = g.witness
        out.append(item)
    return out


def _dec_groups(items: Sequence[dict]) -> tuple[GroupVerdict, ...]:
    return tuple(GroupVerdict(tuple(g["members"]), g["kind"], g.get("witness")) for g in items)


# -- operations ---------------------------------------------------------------------------

def pik_report(family: Family, k: int, caps: Caps = Caps(), seed=None) -> dict:
    v = check_pik(family, k)
    cert = {"holds": v.holds, "size_checked": v.size_checked,
            "violating": None if v.violating is None else list(v.violating),
            "witnesses": [{"subfamily": list(c), "point": enc_point(p)} for c, p in v.witnesses]}
    return _report("check-pik", family_digest(family), {"k": k}, v.holds, cert,
                   _verify_pik(cert, family, k), caps, seed)


def helly_report(family: Family, caps: Caps = Caps(), seed=None) -> dict:
    p = helly_point(family)
    cert = {"point": None if p is None else enc_point(p)}
    if p is None:
        v = check_pik(family, family.dimension + 1)
        cert["violating"] = None if v.violating is None else list(v.violating)
    return _report("helly", family_digest(family), {}, p is not None, cert,
                   _verify_helly(cert, family), caps, seed)


def _depth_payload(cert, complex) -> dict:
    return {"point": enc_point(cert.point), "value": cert.value, "hit_set": sorted(cert.hit_set),
            "escape": encode_escape(cert.escape, complex),
            "failed_hit_sets": [sorted(s) for s in cert.lower_bound_proof]}


def depth_report(family: Family, x, caps: Caps = Caps(), seed=None) -> dict:
    cx = build_arrangement(family, caps.max_hyperplanes)
    cert = depth(as_point(x), family, cx)
    payload = _depth_payload(cert, cx)
    return _report("depth", family_digest(family), {"x": enc_point(cert.point)}, True, payload,
                   _verify_depth(payload, family, caps), caps, seed)


def central_point_report(family: Family, caps: Caps = Caps(), seed=None) -> dict:
    cx = build_arrangement(family, caps.max_hyperplanes)
    rep = central_point(family, cx)
    payload = {"point": enc_point(rep.point), "sign": sign_string(rep.sign),
               "depth": _depth_payload(rep.certificate, cx), "required": rep.required,
               "bound_met": rep.bound_met, "pi_d_holds": rep.pi_d_holds}
    return _report("central-point", family_digest(family), {}, rep.bound_met, payload,
                   _verify_central(payload, family, caps), caps, seed)


def partition_report(family: Family, r: int, x=None, caps: Caps = Caps(), seed=None) -> dict:
    search = partition_search(family, r, None if x is None else as_point(x),
                              max_bodies=caps.max_bodies, max_hyperplanes=caps.max_hyperplanes)
    cert = search.certificate
    payload = {"found": cert is not None, "candidates_checked": search.candidates_checked,
               "exhaustive": search.exhaustive, "refuted": search.refuted,
               "r_is_prime_power": is_prime_power(r)}
    if cert is not None:
        payload.update(point=enc_point(cert.point), groups=_enc_groups(cert.groups))
    params = {"r": r, "x": None if x is None else enc_point(as_point(x))}
    return _report("partition", family_digest(family), params, cert is not None, payload,
                   _verify_partition(payload, family, r, caps), caps, seed)


def surround_report(family: Family, sub: Sequence[int], x, caps: Caps = Caps(), seed=None) -> dict:
    cx = build_arrangement(family.subfamily(sub), caps.max_hyperplanes)
    v = surrounds(range(len(sub)), as_point(x), cx)
    payload = {"surrounded": v.surrounded, "evidence": v.evidence, "standard_size": v.standard_size,
               "container": None if v.container is None else list(sub)[v.container],
               "escape": encode_escape(v.escape, cx),
               "component": [_cell_dict(cx, i) for i in v.component]}
    params = {"subfamily": list(sub), "x": enc_point(as_point(x))}
    return _report("surround", family_digest(family), params, v.surrounded, payload,
                   _verify_surround(payload, family, params, caps), caps, seed)


def lemma5_report(family: Family, b, caps: Caps = Caps(), seed=None) -> dict:
    res = lemma_surround_certificate(family, as_point(b), caps.max_hyperplanes)
    payload = {"reason": res.reason, "certificate": None}
    if res.certificate is not None:
        c = res.certificate
        payload["certificate"] = {
            "base": enc_point(c.base),
            "closest": [enc_point(p) for p in c.closest],
            "halfspaces": [_enc_halfspace(h) for h in c.halfspaces],
            "vertices": [enc_point(p) for p in c.vertices],
            "closest_barycentric": [enc(v) for v in c.closest_barycentric],
            "simplex_barycentric": [enc(v) for v in c.simplex_barycentric],
        }
    return _report("lemma5", family_digest(family), {"b": enc_point(as_point(b))}, bool(res), payload,
                   _verify_lemma5(payload, family), caps, seed)


def transversal_report(families: Sequence[Family], m: int, caps: Caps = Caps(), seed=None,
                       farey_order: int = 3) -> dict:
    cert = transversal_search(families, m, farey_order=farey_order, max_bodies=caps.max_bodies,
                              max_hyperplanes=caps.max_hyperplanes)
    payload = {"found": cert is not None}
    if cert is not None:
        payload.update(
            basepoint=enc_point(cert.flat.basepoint),
            directions=[enc_point(v) for v in cert.flat.directions],
            partitions=[_enc_groups(p) for p in cert.partitions],
            r_values=list(cert.r_values), common_prime=cert.common_prime,
            hypotheses=dict(cert.hypotheses))
    return _report("transversal", input_digest(families), {"m": m, "farey_order": farey_order},
                   cert is not None, payload, _verify_transversal(payload, families, caps), caps, seed)


def tukey_report(points, x=None, caps: Caps = Caps(), seed=None) -> dict:
    pts = [as_point(p) for p in points]
    if x is None:
        rep = discrete_central_point(pts)
        payload = {"center": enc_point(rep.center), "depth": rep.depth, "bound": rep.bound,
                   "bound_met": rep.bound_met}
        verdict = rep.bound_met
    else:
        t = tukey_depth(pts, x)
        payload = {"center": enc_point(as_point(x)), "depth": t, "bound": None, "bound_met": None}
        verdict = True
    params = {"x": None if x is None else enc_point(as_point(x))}
    return _report("tukey", points_digest(pts), params, verdict, payload,
                   _verify_tukey(payload, pts), caps, seed)


# -- verification ---------------------------------------------------------------------------

def _verify_pik(cert, family, k) -> Verification:
    if cert["holds"]:
        for w in cert["witnesses"]:
            p = dec_point(w["point"])
            if not all(contains(family[i], p) for i in w["subfamily"]):
                return Verification(False, f"witness for {w['subfamily']} misses a body")
        if not check_pik(family, k):
            return Verification(False, "recheck finds a violating subfamily")
        return Verification(True)
    viol = cert["violating"]
    if viol is None or common_point([family[i] for i in viol], family.dimension) is not None:
        return Verification(False, "violating subfamily has a common point")
    return Verification(True)


def _verify_helly(cert, family) -> Verification:
    if cert["point"] is not None:
        p = dec_point(cert["point"])
        return Verification(all(contains(b, p) for b in family), "point misses a body")
    if helly_point(family) is not None:
        return Verification(False, "family has a common point")
    return Verification(True)


def _verify_depth(payload, family, caps) -> Verification:
    x = dec_point(payload["point"])
    cx = build_arrangement(family, caps.max_hyperplanes)
    esc = decode_escape(payload["escape"], cx)
    if esc.avoided != frozenset(range(len(family))) - frozenset(payload["hit_set"]):
        return Verification(False, "escape avoids the wrong bodies")
    if len(payload["hit_set"]) != payload["value"]:
        return Verification(False, "hit set size differs from value")
    problem = check_escape_certificate(esc, x, cx)
    if problem:
        return Verification(False, problem)
    if depth(x, family, cx).value != payload["value"]:
        return Verification(False, "a smaller hit set escapes")
    return Verification(True)


def _verify_central(payload, family, caps) -> Verification:
    v = _verify_depth(payload["depth"], family, caps)
    if not v:
        return v
    cx = build_arrangement(family, caps.max_hyperplanes)
    if max(depth_map(cx), default=0) != payload["depth"]["value"]:
        return Verification(False, "a deeper cell exists")
    if payload["bound_met"] != (payload["depth"]["value"] >= payload["required"]):
        return Verification(False, "bound flag")
    return Verification(True)


def _verify_partition(payload, family, r, caps) -> Verification:
    if not payload["found"]:
        return Verification(True, "no certificate to check")
    cert = PartitionCertificate(dec_point(payload["point"]), r, _dec_groups(payload["groups"]),
                                is_prime_power(r))
    return verify_partition(cert, family, caps.max_hyperplanes)


def _verify_surround(payload, family, params, caps) -> Verification:
    sub = params["subfamily"]
    x = dec_point(params["x"])
    cx = build_arrangement(family.subfamily(sub), caps.max_hyperplanes)
    again = surrounds(range(len(sub)), x, cx)
    if again.surrounded != payload["surrounded"]:
        return Verification(False, "surround verdict differs on recheck")
    if payload["escape"] is not None:
        problem = check_escape_certificate(decode_escape(payload["escape"], cx), x, cx)
        if problem:
            return Verification(False, problem)
    if payload["container"] is not None and not contains(family[payload["container"]], x):
        return Verification(False, "container misses x")
    return Verification(True)


def _verify_lemma5(payload, family) -> Verification:
    c = payload["certificate"]
    if c is None:
        return Verification(True, "no certificate to check")
    cert = SimplexCertificate(
        dec_point(c["base"]), tuple(dec_point(p) for p in c["closest"]),
        tuple(_dec_halfspace(h) for h in c["halfspaces"]), tuple(dec_point(p) for p in c["vertices"]),
        dec_point(c["closest_barycentric"]), dec_point(c["simplex_barycentric"]))
    return check_simplex_certificate(cert, family)


def _verify_transversal(payload, families, caps) -> Verification:
    if not payload["found"]:
        return Verification(True, "no certificate to check")
    flat = Flat(dec_point(payload["basepoint"]), tuple(dec_point(v) for v in payload["directions"]))
    cert = TransversalCertificate(flat, tuple(_dec_groups(p) for p in payload["partitions"]),
                                  tuple(payload["r_values"]), payload["common_prime"],
                                  dict(payload["hypotheses"]))
    v = verify_transversal(cert, families, caps.max_hyperplanes)
    if v and not flat.directions:
        # m = 0: the flat is a point, so the partition check applies verbatim
        groups = tuple(GroupVerdict(g.members, "contains" if g.kind == "intersects" else g.kind, g.witness)
                       for g in cert.partitions[0])
        return verify_partition(PartitionCertificate(flat.basepoint, len(groups), groups, False),
                                families[0], caps.max_hyperplanes)
    return v


def _verify_tukey(payload, pts) -> Verification:
    c = dec_point(payload["center"])
    if tukey_depth(pts, c) != payload["depth"]:
        return Verification(False, "depth differs on recheck")
    if payload["bound"] is not None:
        if discrete_central_point(pts).depth != payload["depth"]:
            return Verification(False, "a deeper candidate exists")
        if payload["bound_met"] != (payload["depth"] >= payload["bound"]):
            return Verification(False, "bound flag")
    return Verification(True)


def verify_report(report: dict, families: Sequence[Family] = (), points=None) -> Verification:
    """Re-check a report against its inputs: digests first, then the certificate."""
    op = report.get("operation")
    if op not in OPERATIONS:
        return Verification(False, f"unknown operation {op!r}")
    caps = Caps(**report.get("caps", {}))
    params, cert = report.get("parameters", {}), report.get("certificate", {})
    if op == "tukey":
        if points is None:
            return Verification(False, "tukey reports need the point file")
        if points_digest(points) != report["input_digest"]:
            return Verification(False, "input digest mismatch")
        return _verify_tukey(cert, [as_point(p) for p in points])
    if not families:
        return Verification(False, "no family given")
    if input_digest(families) != report["input_digest"]:
        return Verification(False, "input digest mismatch")
    if op == "transversal":
        return _verify_transversal(cert, families, caps)
    family = families[0]
    try:
        if op == "check-pik":
            return _verify_pik(cert, family, params["k"])
        if op == "helly":
            return _verify_helly(cert, family)
        if op == "depth":
            return _verify_depth(cert, family, caps)
        if op == "central-point":
            return _verify_central(cert, family, caps)
        if op == "partition":
            return _verify_partition(cert, family, params["r"], caps)
        if op == "surround":
            return _verify_surround(cert, family, params, caps)
        return _verify_lemma5(cert, family)
    except (KeyError, ValueError, IndexError, TypeError) as exc:
        return Verification(False, f"malformed certificate: {exc}")
