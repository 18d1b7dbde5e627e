"""Words in free groups.

A word is a sequence of letters (generator index, sign) kept freely reduced.  The
text syntax uses one character per generator; a character whose case-swap is a
generator name (and which is not itself a generator) denotes the inverse, so with
generators x, y, z the word "Xy" is x^-1 y.  Parenthesized groups and single
letters take integer exponents: "(zx)^3 y^-2".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


def free_reduce(letters: Iterable[tuple]) -> tuple:
    out = []
    for g, e in letters:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def cyclic_reduce(letters: Sequence[tuple]) -> tuple:
    w = free_reduce(letters)
    i, j = 0, len(w)
    while j - i >= 2 and w[i][0] == w[j - 1][0] and w[i][1] == -w[j - 1][1]:
        i += 1
        j -= 1
    return w[i:j]


@dataclass(frozen=True)
class Word:
    letters: tuple = ()

    def __post_init__(self):
        letters = tuple((int(g), 1 if e > 0 else -1) for g, e in self.letters)
        if any(g < 0 for g, _ in letters) or any(e == 0 for _, e in self.letters):
            raise ValueError("letters need a non-negative generator index and a nonzero sign")
        object.__setattr__(self, "letters", free_reduce(letters))

    @classmethod
    def gen(cls, g: int, power: int = 1) -> "Word":
        e = 1 if power > 0 else -1
        return cls(((g, e),) * abs(power))

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inverse()
        return Word(base.letters * abs(n))

    def cyclically_reduced(self) -> "Word":
        return Word(cyclic_reduce(self.letters))

    def is_cyclically_reduced(self) -> bool:
        return cyclic_reduce(self.letters) == self.letters

    def exponent_sums(self, n_gens: int) -> tuple:
        out = [0] * n_gens
        for g, e in self.letters:
            if g >= n_gens:
                raise ValueError(f"generator index {g} out of range")
            out[g] += e
        return tuple(out)

    def substitute(self, images: Sequence["Word"]) -> "Word":
        out = []
        for g, e in self.letters:
            w = images[g] if e > 0 else images[g].inverse()
            out.extend(w.letters)
        return Word(tuple(out))

    def max_generator(self) -> int:
        return max((g for g, _ in self.letters), default=-1)

    def to_json(self) -> list:
        return [g if e > 0 else -g - 1 for g, e in self.letters]

    @classmethod
    def from_json(cls, obj) -> "Word":
        return cls(tuple((x, 1) if x >= 0 else (-x - 1, -1) for x in obj))

    def format(self, names: Sequence[str]) -> str:
        """Text form accepted by parse_word; runs are written with exponents."""
        if not self.letters:
            return "1"
        runs = []
        for g, e in self.letters:
            if runs and runs[-1][0] == (g, e):
                runs[-1][1] += 1
            else:
                runs.append([(g, e), 1])
        parts = []
        for (g, e), n in runs:
            name = names[g]
            inv = name.swapcase()
            if e < 0 and inv != name and inv not in names:
                sym, k = inv, n
            else:
                sym, k = name, n * e
            parts.append(sym if k == 1 else f"{sym}^{k}")
        return "".join(parts)


class WordSyntaxError(ValueError):
    pass


def parse_word(text: str, names: Sequence[str]) -> Word:
    index = {n: i for i, n in enumerate(names)}
    if any(len(n) != 1 for n in names):
        raise ValueError("text syntax needs single-character generator names")
    s = text.replace(" ", "")
    if s in ("", "1"):
        return Word()
    pos = 0

    def exponent():
        nonlocal pos
        if pos < len(s) and s[pos] == "^":
            pos += 1
            start = pos
            if pos < len(s) and s[pos] in "+-":
                pos += 1
            while pos < len(s) and s[pos].isdigit():
                pos += 1
            if start == pos or not s[start:pos].lstrip("+-"):
                raise WordSyntaxError(f"missing exponent at {start} in {text!r}")
            return int(s[start:pos])
        return 1

    def sequence(close: bool) -> list:
        nonlocal pos
        out = []
        while pos < len(s):
            ch = s[pos]
            if ch == ")":
                if not close:
                    raise WordSyntaxError(f"unbalanced ')' in {text!r}")
                pos += 1
                return out
            if ch == "(":
                pos += 1
                inner = Word(tuple(sequence(True)))
                out.extend((inner ** exponent()).letters)
                continue
            pos += 1
            if ch in index:
                letter = Word.gen(index[ch])
            elif ch.swapcase() in index:
                letter = Word.gen(index[ch.swapcase()], -1)
            else:
                raise WordSyntaxError(f"unknown generator {ch!r} in {text!r}")
            out.extend((letter ** exponent()).letters)
        if close:
            raise WordSyntaxError(f"unbalanced '(' in {text!r}")
        return out

    return Word(tuple(sequence(False)))
