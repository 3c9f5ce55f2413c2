"""Machine-checkable generation certificates.

A positive certificate claims that named generators generate a group G_k
and proves it by a transcript: derivation steps build new elements as
words in what is already available, checkpoint steps pin down expected
values, and axiom steps turn verified hypotheses into facts.  The facts
track what is known to be contained in the generated subgroup; once the
fact "all of Alt(Z)" is on the table, the final rule only needs the
generators to lie in G_k and their shifts to generate kZ.

A negative certificate claims the generators do *not* generate the target
and names a concrete obstruction that the verifier re-checks from scratch.

Soundness rests on the verifier alone: every hypothesis an axiom needs is
recomputed from the actual elements, never trusted from the certificate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .elem import (
    ElemError,
    Group,
    GroupElement,
    class_tk_relabel,
    in_class_tk,
    member,
    parse_element,
    parse_group,
)
from .orbits import decompose, orbit_index


class CertError(ValueError):
    pass


Word = Tuple[Tuple[str, int], ...]


@dataclass(frozen=True)
class Derive:
    name: str
    word: Word


@dataclass(frozen=True)
class CheckEqual:
    name: str
    expected: GroupElement


@dataclass(frozen=True)
class Axiom:
    variant: str
    params: dict


Step = Union[Derive, CheckEqual, Axiom]


@dataclass(frozen=True)
class PositiveCertificate:
    target: Group
    generators: Dict[str, GroupElement]
    steps: Tuple[Step, ...]


@dataclass(frozen=True)
class NegativeCertificate:
    target: Group
    generators: Dict[str, GroupElement]
    variant: str
    params: dict


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    reason: str

    def __bool__(self) -> bool:
        return self.ok


def _fail(reason: str) -> VerifyResult:
    return VerifyResult(False, reason)


def eval_word(env: Dict[str, GroupElement], word: Word) -> GroupElement:
    from .elem import identity

    out = identity()
    for name, exp in word:
        if name not in env:
            raise CertError("unknown name %r in word" % name)
        if not isinstance(exp, int):
            raise CertError("non-integer exponent in word")
        out = out * (env[name] ** exp)
    return out


# -- positive axioms ---------------------------------------------------------

ALT_Z = ("alt_z",)


def _axiom_gcd_criterion(env, facts, params) -> Optional[str]:
    """A 3-cycle on one infinite orbit of s, with coprime gaps between the
    consecutive orbit positions of its support, gives Alt of that orbit;
    when s has a single orbit that is Alt(Z)."""
    cyc = env.get(params.get("cycle"))
    s = env.get(params.get("s"))
    if cyc is None or s is None:
        return "gcd_criterion: unknown element name"
    if cyc.shift != 0 or not cyc.fin.is_three_cycle():
        return "gcd_criterion: %s is not a finitary 3-cycle" % params.get("cycle")
    d = abs(s.shift)
    if d < 1:
        return "gcd_criterion: s is finitary"
    dec = decompose(s)
    if dec.finite:
        return "gcd_criterion: s has finite orbits"
    pts = sorted(cyc.fin.support)
    ids = {dec.orbit_id_of(s, p) for p in pts}
    if len(ids) != 1:
        return "gcd_criterion: support spans several orbits of s"
    oid = ids.pop()
    idx = sorted(orbit_index(s, pts[0], p) for p in pts)
    if None in idx:
        return "gcd_criterion: support not located on the orbit"
    g1, g2 = idx[1] - idx[0], idx[2] - idx[1]
    if gcd(g1, g2) != 1:
        return "gcd_criterion: orbit gaps %d, %d are not coprime" % (g1, g2)
    facts.add(("alt_on_orbit", params["s"], oid))
    if d == 1:
        facts.add(ALT_Z)
    return None


def _axiom_g2_seed(env, facts, params) -> Optional[str]:
    """A 3-cycle whose support, read in coordinates where s becomes t^2,
    contains two points of one parity two apart plus a point of the other
    parity, generates Alt(Z) together with s."""
    cyc = env.get(params.get("cycle"))
    s = env.get(params.get("s"))
    if cyc is None or s is None:
        return "g2_seed: unknown element name"
    if cyc.shift != 0 or not cyc.fin.is_three_cycle():
        return "g2_seed: %s is not a finitary 3-cycle" % params.get("cycle")
    w = in_class_tk(s, 2)
    if w is None:
        return "g2_seed: s is not conjugate to a translation by 2"
    try:
        rel = class_tk_relabel(s, w, tuple(cyc.fin.support))
    except ElemError as exc:
        return "g2_seed: %s" % exc
    vals = sorted(rel.values())
    evens = [v for v in vals if v % 2 == 0]
    odds = [v for v in vals if v % 2 != 0]
    pair, lone = (evens, odds) if len(evens) == 2 else (odds, evens)
    if len(pair) != 2 or len(lone) != 1:
        return "g2_seed: relabelled support %r has no 2+1 parity split" % vals
    if abs(pair[1] - pair[0]) != 2:
        return "g2_seed: same-parity points %r are not two apart" % pair
    facts.add(ALT_Z)
    return None


def _axiom_alt_basis(env, facts, params) -> Optional[str]:
    """3-cycles (base+1, base+2, base+j) for j = 3..c+2 together with an
    element that translates the tail beyond base by +-c give Alt of the
    tail {x > base}; since the step element has no finite orbits, every
    point eventually enters the tail and Alt(Z) follows."""
    u = env.get(params.get("step"))
    if u is None:
        return "alt_basis: unknown step element"
    base = params.get("base")
    c = params.get("c")
    if not isinstance(base, int) or not isinstance(c, int) or c < 1:
        return "alt_basis: bad base/c parameters"
    if abs(u.shift) != c:
        return "alt_basis: step element shift is not +-%d" % c
    if u.eventual_bound() > base:
        return "alt_basis: step element support reaches beyond the base"
    if decompose(u).finite:
        return "alt_basis: step element has finite orbits"
    names = params.get("cycles")
    if not isinstance(names, (list, tuple)):
        return "alt_basis: cycles must be a list of names"
    supports = set()
    for nm in names:
        el = env.get(nm)
        if el is None:
            return "alt_basis: unknown cycle name %r" % nm
        if el.shift == 0 and el.fin.is_three_cycle():
            supports.add(frozenset(el.fin.support))
    for j in range(3, c + 3):
        if frozenset({base + 1, base + 2, base + j}) not in supports:
            return "alt_basis: missing 3-cycle on {%d, %d, %d}" % (
                base + 1,
                base + 2,
                base + j,
            )
    facts.add(ALT_Z)
    return None


def _axiom_odd_even_mix(env, facts, params) -> Optional[str]:
    """Alt on one of the two orbits of s plus an even finitary element with
    a cycle meeting both orbits give Alt(Z)."""
    s_name = params.get("s")
    s = env.get(s_name)
    sigma = env.get(params.get("sigma"))
    if s is None or sigma is None:
        return "odd_even_mix: unknown element name"
    if not any(f[0] == "alt_on_orbit" and f[1] == s_name for f in facts):
        return "odd_even_mix: no alt_on_orbit fact for %r" % s_name
    dec = decompose(s)
    if len(dec.infinite) != 2 or dec.finite:
        return "odd_even_mix: s does not have exactly two orbits, all infinite"
    if sigma.shift != 0 or not sigma.fin.is_even():
        return "odd_even_mix: sigma is not an even finitary element"
    for cyc in sigma.fin.cycles():
        ids = {dec.orbit_id_of(s, p) for p in cyc}
        if len(ids) == 2:
            facts.add(ALT_Z)
            return None
    return "odd_even_mix: no cycle of sigma meets both orbits of s"


_AXIOMS = {
    "gcd_criterion": _axiom_gcd_criterion,
    "g2_seed": _axiom_g2_seed,
    "alt_basis": _axiom_alt_basis,
    "odd_even_mix": _axiom_odd_even_mix,
}


def verify_positive(cert: PositiveCertificate) -> VerifyResult:
    if cert.target.kind != "Gk":
        return _fail("positive certificates only support G_k targets")
    if not cert.generators:
        return _fail("no generators")
    env: Dict[str, GroupElement] = dict(cert.generators)
    facts: set = set()
    for i, step in enumerate(cert.steps):
        where = "step %d" % i
        if isinstance(step, Derive):
            if step.name in env:
                return _fail("%s: name %r already bound" % (where, step.name))
            try:
                env[step.name] = eval_word(env, step.word)
            except CertError as exc:
                return _fail("%s: %s" % (where, exc))
        elif isinstance(step, CheckEqual):
            if step.name not in env:
                return _fail("%s: unknown name %r" % (where, step.name))
            if env[step.name] != step.expected:
                return _fail(
                    "%s: %r is %s, expected %s"
                    % (where, step.name, env[step.name], step.expected)
                )
        elif isinstance(step, Axiom):
            fn = _AXIOMS.get(step.variant)
            if fn is None:
                return _fail("%s: unknown axiom variant %r" % (where, step.variant))
            err = fn(env, facts, step.params)
            if err:
                return _fail("%s: %s" % (where, err))
        else:
            return _fail("%s: unknown step kind" % where)
    if ALT_Z not in facts:
        return _fail("transcript never establishes Alt(Z)")
    k = cert.target.k
    for name, g in cert.generators.items():
        if not member(g, cert.target):
            return _fail("generator %r is not a member of %s" % (name, cert.target))
    shifts_gcd = 0
    for g in cert.generators.values():
        shifts_gcd = gcd(shifts_gcd, abs(g.shift))
    if shifts_gcd != k:
        return _fail("generator shifts generate %dZ, not %dZ" % (shifts_gcd, k))
    return VerifyResult(True, "verified: generators generate %s" % cert.target)


# -- negative certificates ---------------------------------------------------


def _window(gens: Sequence[GroupElement]) -> int:
    m = max((g.eventual_bound() for g in gens), default=0)
    s = max((abs(g.shift) for g in gens), default=0)
    return m + 4 * s + 8


def _neg_finitary(cert) -> VerifyResult:
    for name, g in cert.generators.items():
        if g.shift != 0:
            return _fail("generator %r has nonzero shift" % name)
    return VerifyResult(True, "verified: all generators finitary, target is not")


def _neg_shift_lattice(cert) -> VerifyResult:
    if cert.target.kind != "Gk":
        return _fail("shift_lattice applies to G_k targets only")
    shifts_gcd = 0
    for g in cert.generators.values():
        shifts_gcd = gcd(shifts_gcd, abs(g.shift))
    if shifts_gcd == cert.target.k:
        return _fail("generator shifts do generate %dZ" % cert.target.k)
    return VerifyResult(
        True,
        "verified: shifts generate %dZ instead of %dZ" % (shifts_gcd, cert.target.k),
    )


def _neg_not_in_group(cert) -> VerifyResult:
    name = cert.params.get("witness")
    if name not in cert.generators:
        return _fail("not_in_group: unknown generator %r" % name)
    if member(cert.generators[name], cert.target):
        return _fail("not_in_group: %r is a member of %s" % (name, cert.target))
    return VerifyResult(True, "verified: generator %r lies outside %s" % (name, cert.target))


def _neg_invariant_set(cert) -> VerifyResult:
    name = cert.params.get("element")
    if name not in cert.generators:
        return _fail("invariant_set: unknown generator %r" % name)
    wanted = cert.params.get("orbits")
    if not isinstance(wanted, (list, tuple)) or not wanted:
        return _fail("invariant_set: orbit list required")
    base = cert.generators[name]
    dec = decompose(base)
    known = {"inf%d" % o.index for o in dec.infinite}
    known.update("fin%d" % i for i in range(len(dec.finite)))
    for oid in wanted:
        if oid not in known:
            return _fail("invariant_set: %r has no orbit %r" % (name, oid))
    chosen_inf = [o for o in dec.infinite if "inf%d" % o.index in wanted]
    chosen_fin = [dec.finite[i] for i in range(len(dec.finite)) if "fin%d" % i in wanted]
    d = abs(base.shift)
    m = dec.bound
    pos_res = {o.pos_residue for o in chosen_inf}
    neg_res = {o.neg_residue for o in chosen_inf}
    inner = set()
    for o in chosen_inf:
        inner.update(o.exceptional_points)
    for cyc in chosen_fin:
        inner.update(cyc)

    def in_U(x: int) -> bool:
        if x > m:
            return bool(chosen_inf) and x % d in pos_res
        if x < -m:
            return bool(chosen_inf) and x % d in neg_res
        return x in inner

    W = _window(list(cert.generators.values()) + [base])
    if not any(in_U(x) for x in range(-W, W + 1)):
        return _fail("invariant_set: the set is empty")
    if all(in_U(x) for x in range(-W, W + 1)) and (not chosen_inf or (
        len(pos_res) == d and len(neg_res) == d
    )):
        return _fail("invariant_set: the set is everything")
    for gname, g in cert.generators.items():
        for x in range(-W, W + 1):
            if in_U(x) != in_U(g.apply(x)):
                return _fail(
                    "invariant_set: generator %r moves %d across the boundary"
                    % (gname, x)
                )
        if chosen_inf:
            sg = g.shift
            for r in pos_res:
                if (r + sg) % d not in pos_res:
                    return _fail(
                        "invariant_set: positive tail not closed under %r" % gname
                    )
            for r in neg_res:
                if (r + sg) % d not in neg_res:
                    return _fail(
                        "invariant_set: negative tail not closed under %r" % gname
                    )
    return VerifyResult(
        True,
        "verified: a proper nonempty set invariant under all generators",
    )


def _neg_block_system(cert) -> VerifyResult:
    mod = cert.params.get("modulus")
    if not isinstance(mod, int) or mod < 2:
        return _fail("block_system: modulus must be an integer >= 2")
    try:
        s = parse_element(cert.params.get("relabel", ""))
    except ElemError as exc:
        return _fail("block_system: bad relabel element: %s" % exc)
    w = in_class_tk(s, 1)
    if w is None:
        return _fail("block_system: relabel element is not conjugate to t or t^-1")
    seed = w.seeds[0]
    W = _window(list(cert.generators.values()) + [s])

    cache: Dict[int, int] = {}

    def phi(x: int) -> int:
        if x not in cache:
            n = orbit_index(s, seed, x, limit=4 * W + 16)
            if n is None:
                raise CertError("block_system: point %d not located" % x)
            cache[x] = n
        return cache[x]

    try:
        for gname, g in cert.generators.items():
            pts = list(range(-W, W + 1)) + [W + 1 + s.eventual_bound(), -(W + 1 + s.eventual_bound())]
            inc = None
            for x in pts:
                a = (phi(g.apply(x)) - phi(x)) % mod
                if inc is None:
                    inc = a
                elif a != inc:
                    return _fail(
                        "block_system: generator %r is not class-affine mod %d"
                        % (gname, mod)
                    )
    except CertError as exc:
        return _fail(str(exc))
    return VerifyResult(
        True,
        "verified: all generators act affinely on classes mod %d" % mod,
    )


def _neg_imprimitivity3(cert) -> VerifyResult:
    pts = cert.params.get("points")
    if not isinstance(pts, (list, tuple)) or len(pts) != 3 or len(set(pts)) != 3:
        return _fail("imprimitivity3: need three distinct points")
    a1, a2, a3 = pts
    hname = cert.params.get("h")
    if hname not in cert.generators:
        return _fail("imprimitivity3: unknown generator %r" % hname)
    if len(cert.generators) != 2:
        return _fail("imprimitivity3: exactly two generators required")
    (other_name,) = [n for n in cert.generators if n != hname]
    sigma = cert.generators[other_name]
    h = cert.generators[hname]
    from .perm import FinPerm

    cyc = FinPerm.cycle(a1, a2, a3)
    if sigma.shift != 0 or sigma.fin not in (cyc, cyc.inverse()):
        return _fail(
            "imprimitivity3: generator %r is not the 3-cycle on %r" % (other_name, pts)
        )
    dec = decompose(h)
    if not dec.infinite:
        return _fail("imprimitivity3: %r has no infinite orbits" % hname)
    ids = []
    for p in pts:
        oid = dec.orbit_id_of(h, p)
        if not oid.startswith("inf"):
            return _fail("imprimitivity3: point %d is on a finite orbit of %r" % (p, hname))
        ids.append(oid)
    if len(set(ids)) != 3:
        return _fail("imprimitivity3: the points share an orbit of %r" % hname)
    return VerifyResult(
        True,
        "verified: blocks {(a_i)h^j} form a nontrivial invariant partition",
    )


_NEGATIVES = {
    "finitary": _neg_finitary,
    "shift_lattice": _neg_shift_lattice,
    "invariant_set": _neg_invariant_set,
    "block_system": _neg_block_system,
    "imprimitivity3": _neg_imprimitivity3,
    "not_in_group": _neg_not_in_group,
}


def verify_negative(cert: NegativeCertificate) -> VerifyResult:
    if not cert.generators:
        return _fail("no generators")
    fn = _NEGATIVES.get(cert.variant)
    if fn is None:
        return _fail("unknown negative variant %r" % cert.variant)
    return fn(cert)


def verify(cert) -> VerifyResult:
    if isinstance(cert, PositiveCertificate):
        return verify_positive(cert)
    if isinstance(cert, NegativeCertificate):
        return verify_negative(cert)
    raise CertError("not a certificate: %r" % (cert,))


# -- serialization -----------------------------------------------------------


def _word_to_json(word: Word) -> list:
    return [[name, exp] for name, exp in word]


def _word_from_json(data) -> Word:
    if not isinstance(data, list):
        raise CertError("word must be a list")
    out = []
    for item in data:
        if not (isinstance(item, list) and len(item) == 2 and isinstance(item[0], str)
                and isinstance(item[1], int)):
            raise CertError("bad word letter %r" % (item,))
        out.append((item[0], item[1]))
    return tuple(out)


def cert_to_dict(cert) -> dict:
    gens = {n: str(g) for n, g in cert.generators.items()}
    if isinstance(cert, PositiveCertificate):
        steps = []
        for step in cert.steps:
            if isinstance(step, Derive):
                steps.append({"derive": {"name": step.name, "word": _word_to_json(step.word)}})
            elif isinstance(step, CheckEqual):
                steps.append({"check": {"name": step.name, "expected": str(step.expected)}})
            else:
                steps.append({"axiom": {"variant": step.variant, **step.params}})
        return {"target": str(cert.target), "generators": gens, "steps": steps}
    if isinstance(cert, NegativeCertificate):
        return {
            "target": str(cert.target),
            "generators": gens,
            "negative": {"variant": cert.variant, **cert.params},
        }
    raise CertError("not a certificate: %r" % (cert,))


def cert_to_json(cert) -> str:
    return json.dumps(cert_to_dict(cert), indent=2, sort_keys=True)


def cert_from_dict(data: dict):
    if not isinstance(data, dict):
        raise CertError("certificate must be a JSON object")
    try:
        target = parse_group(data["target"])
        gens = {n: parse_element(s) for n, s in data["generators"].items()}
    except (KeyError, TypeError, ElemError) as exc:
        raise CertError("bad certificate header: %s" % exc) from exc
    if "negative" in data:
        neg = dict(data["negative"])
        variant = neg.pop("variant", None)
        if not isinstance(variant, str):
            raise CertError("negative certificate needs a variant")
        return NegativeCertificate(target=target, generators=gens, variant=variant, params=neg)
    steps: List[Step] = []
    for raw in data.get("steps", []):
        if not isinstance(raw, dict) or len(raw) != 1:
            raise CertError("bad step %r" % (raw,))
        (kind, body), = raw.items()
        if kind == "derive":
            steps.append(Derive(name=body["name"], word=_word_from_json(body["word"])))
        elif kind == "check":
            steps.append(CheckEqual(name=body["name"], expected=parse_element(body["expected"])))
        elif kind == "axiom":
            body = dict(body)
            variant = body.pop("variant", None)
            if not isinstance(variant, str):
                raise CertError("axiom step needs a variant")
            steps.append(Axiom(variant=variant, params=body))
        else:
            raise CertError("unknown step kind %r" % kind)
    return PositiveCertificate(target=target, generators=gens, steps=tuple(steps))


def cert_from_json(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertError("invalid JSON: %s" % exc) from exc
    return cert_from_dict(data)
