"""Substitution scripts mapping surgered groups onto Coxeter-type quotients.

A script lists a source presentation, a target presentation and an image word in
the target for every source generator.  quotient_consistency checks that every
source relator maps to the identity: first in the abelianization of the target
(exact), then at word level by derivation search (bounded, inconclusive on failure).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Optional

from . import data
from .derivation import (DEFAULT_MAX_LEN, DEFAULT_MAX_STEPS, DerivationCertificate,
                         SearchResult, derivation_search, power_certificate, replay)
from .presentations import Presentation, c5_presentation, in_relation_lattice
from .slopes import KnotSpec

PROVED = "proved"
EXHAUSTED = "budget-exhausted"


def _params(p: int, q: int) -> dict:
    return {"p": p, "q": q, "hp": (p - 1) // 2, "Hp": (p + 1) // 2,
            "hq": (q - 1) // 2, "Hq": (q + 1) // 2}


@lru_cache(maxsize=None)
def _scripts() -> dict:
    return data.load_json("substitution_scripts.json")["scripts"]


def script_names() -> tuple:
    return tuple(sorted(_scripts()))


@dataclass(frozen=True)
class SubstitutionScript:
    name: str
    source: Presentation
    target: Presentation
    images: tuple  # one target word per source generator
    max_len: int = DEFAULT_MAX_LEN

    def to_json(self) -> dict:
        return {"name": self.name, "source": self.source.to_json(),
                "target": self.target.to_json(),
                "images": {g: self.target.format(w)
                           for g, w in zip(self.source.generators, self.images)},
                "max_len": self.max_len}


def load_script(name: str, p: int, q: int) -> SubstitutionScript:
    KnotSpec(p, q)
    raw = _scripts().get(name)
    if raw is None:
        raise ValueError(f"unknown substitution script {name!r}; known: {', '.join(script_names())}")
    par = _params(p, q)

    def pres(obj, label):
        rels = tuple(r.format(**par) for r in obj["relators"])
        return Presentation(tuple(obj["generators"]), rels, f"{name}:{label}({p},{q})")

    src, tgt = pres(raw["source"], "source"), pres(raw["target"], "target")
    images = tuple(tgt.word(raw["images"][g]) for g in src.generators)
    return SubstitutionScript(name, src, tgt, images, int(raw.get("max_len", DEFAULT_MAX_LEN)))


@dataclass
class RelatorCheck:
    relator: str
    image: str
    abelian_ok: bool
    status: str
    certificate: Optional[DerivationCertificate]
    expansions: int

    def to_json(self) -> dict:
        return {"relator": self.relator, "image": self.image, "abelian_ok": self.abelian_ok,
                "status": self.status, "expansions": self.expansions,
                "certificate": self.certificate.to_json() if self.certificate else None}


@dataclass
class QuotientReport:
    source: Presentation
    target: Presentation
    checks: list

    @property
    def abelian_ok(self) -> bool:
        return all(c.abelian_ok for c in self.checks)

    @property
    def all_proved(self) -> bool:
        return all(c.status == PROVED for c in self.checks)

    def to_json(self) -> dict:
        return {"source": self.source.to_json(), "target": self.target.to_json(),
                "abelian_ok": self.abelian_ok, "all_proved": self.all_proved,
                "relators": [c.to_json() for c in self.checks]}


def quotient_consistency(source: Presentation, target: Presentation, images,
                         max_len: int = DEFAULT_MAX_LEN, max_steps: int = DEFAULT_MAX_STEPS,
                         word_level: bool = True) -> QuotientReport:
    if isinstance(images, Mapping):
        missing = [g for g in source.generators if g not in images]
        if missing:
            raise ValueError(f"no image for generators {missing}")
        images = [images[g] for g in source.generators]
    images = [target.word(w) if isinstance(w, str) else w for w in images]
    if len(images) != source.n_generators:
        raise ValueError("need one image per source generator")
    checks = []
    for r in source.relators:
        img = r.substitute(images)
        ab = in_relation_lattice(target, img.exponent_sums(target.n_generators))
        cert, status, exp = None, EXHAUSTED, 0
        if word_level:
            res = derivation_search(target, img, max_len=max_len, max_steps=max_steps)
            exp = res.expansions
            if res.found and replay(target, res.certificate):
                cert, status = res.certificate, PROVED
        checks.append(RelatorCheck(source.format(r), target.format(img), ab, status, cert, exp))
    return QuotientReport(source, target, checks)


def check_script(name: str, p: int, q: int, max_steps: int = DEFAULT_MAX_STEPS,
                 word_level: bool = True) -> QuotientReport:
    sc = load_script(name, p, q)
    return quotient_consistency(sc.source, sc.target, sc.images, sc.max_len, max_steps,
                                word_level)


def remark_redundancy(p: int, q: int, k: int) -> bool:
    """Whether the extra relator C^(k-1) of slope 2(p+q)-k already holds in G^{5,p,q}."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return (k - 1) % 5 == 0


@dataclass
class RedundancyProof:
    c5: SearchResult
    power: Optional[DerivationCertificate]
    base: Presentation
    augmented: Presentation

    @property
    def ok(self) -> bool:
        return (self.c5.found and replay(self.base, self.c5.certificate)
                and self.power is not None and replay(self.augmented, self.power))


def remark_certificates(p: int, q: int, k: int, max_steps: int = DEFAULT_MAX_STEPS
                        ) -> Optional[RedundancyProof]:
    """C^5 derived in G before C^5 is imposed, then C^(k-1) from C^5 in (k-1)/5 steps."""
    if not remark_redundancy(p, q, k):
        return None
    base = c5_presentation(p, q)
    c5 = derivation_search(base, base.word("C^5"), max_steps=max_steps)
    augmented = base.with_relators(["C^5"], base.name + "+C^5")
    power = power_certificate(augmented, 2, 5, (k - 1) // 5) if c5.found else None
    return RedundancyProof(c5, power, base, augmented)
