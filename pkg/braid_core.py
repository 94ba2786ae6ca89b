# braid_core.py - Braid words, permutations and the pure braid generator words

import re
from typing import Iterator, List, Optional, Sequence, Tuple

# (generator index, sign); for braid words the index is 1-based, for abstract
# search words it is a 0-based position in the generator list
Letter = Tuple[int, int]
AbstractWord = Tuple[Letter, ...]


class Permutation:
    """Element of S_n acting on {1, ..., degree}.

    Composition follows function composition: (s * t)(k) = s(t(k)), so the
    image of a braid word is the left-to-right product of its transpositions.
    """

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(int(x) for x in images)
        if not images or sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"Not a permutation of 1..{len(images)}: {list(images)}")
        self.images = images

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(1, degree + 1))

    @classmethod
    def transposition(cls, a: int, b: int, degree: int) -> "Permutation":
        if not (1 <= a <= degree and 1 <= b <= degree):
            raise ValueError(f"Transposition ({a},{b}) out of range for degree {degree}")
        images = list(range(1, degree + 1))
        images[a - 1], images[b - 1] = b, a
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise ValueError(f"Degree mismatch: {self.degree} vs {other.degree}")
        mine = self.images
        return Permutation(tuple(mine[k - 1] for k in other.images))

    __mul__ = compose

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for k, image in enumerate(self.images, 1):
            inv[image - 1] = k
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(image == k for k, image in enumerate(self.images, 1))

    def to_list(self) -> List[int]:
        return list(self.images)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({list(self.images)})"


def _has_cancelling_pair(letters: Sequence[Letter]) -> bool:
    return any(a[0] == b[0] and a[1] == -b[1] for a, b in zip(letters, letters[1:]))


class BraidWord:
    """A word in the Artin generators sigma_1 .. sigma_{n-1} and their inverses."""

    __slots__ = ("strands", "letters", "reduced")

    def __init__(self, strands: int, letters: Sequence[Letter] = (), reduced: bool = False):
        if strands < 1:
            raise ValueError(f"Braid words need at least one strand, got {strands}")
        checked = []
        for gen, sign in letters:
            gen, sign = int(gen), int(sign)
            if not 1 <= gen <= strands - 1:
                raise ValueError(f"Generator s{gen} out of range for {strands} strands")
            if sign not in (1, -1):
                raise ValueError(f"Letter sign must be +1 or -1, got {sign}")
            checked.append((gen, sign))
        if reduced and _has_cancelling_pair(checked):
            raise ValueError("Word marked reduced contains an adjacent inverse pair")
        self.strands = strands
        self.letters: Tuple[Letter, ...] = tuple(checked)
        self.reduced = reduced

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __add__(self, other: "BraidWord") -> "BraidWord":
        if other.strands != self.strands:
            raise ValueError(f"Cannot concatenate words on {self.strands} and {other.strands} strands")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple((gen, -sign) for gen, sign in reversed(self.letters)), self.reduced)

    def power(self, k: int) -> "BraidWord":
        base = self if k >= 0 else self.inverse()
        return BraidWord(self.strands, base.letters * abs(k))

    def format(self) -> str:
        """Render in the parser's grammar; the empty word renders as an empty string."""
        return " ".join(f"s{gen}" if sign > 0 else f"s{gen}^-1" for gen, sign in self.letters)

    def __eq__(self, other):
        return isinstance(other, BraidWord) and (self.strands, self.letters) == (other.strands, other.letters)

    def __hash__(self):
        return hash((self.strands, self.letters))

    def __repr__(self):
        return f"BraidWord({self.strands}, '{self.format()}')"


_TOKEN = re.compile(
    r"(?:s(?P<gen>\d+)"
    r"|A\[\s*(?P<i>\d+)\s*,\s*(?P<j>\d+)\s*\]"
    r"|(?P<center>center))"
    r"(?:\^(?P<exp>-?\d+))?"
)


def parse_word(text: str, n: int) -> BraidWord:
    """Parse whitespace-separated tokens: s<k>, A[i,j], center, each with an optional ^k.

    The letters are kept as written; no free reduction is applied.
    """
    letters: List[Letter] = []
    pos = 0
    length = len(text)
    while pos < length:
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN.match(text, pos)
        end = match.end() if match else pos
        if not match or (end < length and not text[end].isspace()):
            snippet = text[pos:pos + 12]
            raise ValueError(f"Syntax error in braid word at position {pos}: {snippet!r}")
        exp = int(match.group("exp")) if match.group("exp") is not None else 1
        if exp == 0:
            raise ValueError(f"Zero exponent in token {match.group(0)!r}")

        if match.group("gen") is not None:
            gen = int(match.group("gen"))
            if not 1 <= gen <= n - 1:
                raise ValueError(f"Generator s{gen} out of range for {n} strands")
            token = BraidWord(n, [(gen, 1)])
        elif match.group("center") is not None:
            token = center_word(n)
        else:
            token = pure_generator_word(int(match.group("i")), int(match.group("j")), n)

        letters.extend(token.power(exp).letters)
        pos = end
    return BraidWord(n, letters)


def free_reduce(w: BraidWord) -> BraidWord:
    stack: List[Letter] = []
    for gen, sign in w.letters:
        if stack and stack[-1] == (gen, -sign):
            stack.pop()
        else:
            stack.append((gen, sign))
    return BraidWord(w.strands, stack, reduced=True)


def underlying_permutation(w: BraidWord) -> Permutation:
    images = list(range(1, w.strands + 1))
    # Right-multiplying by (i, i+1) swaps the images of i and i+1
    for gen, _ in w.letters:
        images[gen - 1], images[gen] = images[gen], images[gen - 1]
    return Permutation(images)


def _check_pair(i: int, j: int, n: int):
    if not 1 <= i < j <= n:
        raise ValueError(f"Pure braid generator needs 1 <= i < j <= n, got i={i}, j={j}, n={n}")


def pure_generator_word(i: int, j: int, n: int) -> BraidWord:
    """A_{i,j} via A_{j-1,j} = s_{j-1}^2 and A_{i,j} = s_i A_{i+1,j} s_i^-1."""
    _check_pair(i, j, n)
    ascent = [(k, 1) for k in range(i, j - 1)]
    descent = [(k, -1) for k in reversed(range(i, j - 1))]
    return BraidWord(n, ascent + [(j - 1, 1), (j - 1, 1)] + descent)


def center_word(n: int) -> BraidWord:
    """A_{1,2} (A_{1,3} A_{2,3}) ... (A_{1,n} ... A_{n-1,n})."""
    if n < 2:
        raise ValueError(f"The center word needs n >= 2, got {n}")
    letters: List[Letter] = []
    for j in range(2, n + 1):
        for i in range(1, j):
            letters.extend(pure_generator_word(i, j, n).letters)
    return BraidWord(n, letters)


def full_twist_word(n: int) -> BraidWord:
    """The Garside square (s_1 ... s_{n-1})^n, which generates the center of B_n."""
    if n < 2:
        raise ValueError(f"The full twist needs n >= 2, got {n}")
    return BraidWord(n, [(k, 1) for k in range(1, n)]).power(n)


def search_alphabet(k: int) -> List[Letter]:
    """Abstract letters in lexicographic order: a, a^-1, b, b^-1, ..."""
    return [(g, sign) for g in range(k) for sign in (1, -1)]


def letter_rank(letter: Letter) -> int:
    return 2 * letter[0] + (0 if letter[1] > 0 else 1)


def word_key(word: Sequence[Letter]) -> Tuple[int, Tuple[int, ...]]:
    """Sort key: shorter first, then lexicographic in search_alphabet order."""
    return len(word), tuple(letter_rank(letter) for letter in word)


def enumerate_reduced_words(k: int, max_len: int, prefix: Sequence[Letter] = ()) -> Iterator[AbstractWord]:
    """Every freely reduced word of length 1..max_len over k generators, shortest first.

    Within one length the words come in lexicographic order. A non-empty
    prefix restricts the stream to words starting with it, which is how a
    search is partitioned across workers.
    """
    if k < 1:
        raise ValueError(f"Alphabet needs at least one generator, got {k}")
    if max_len < 0:
        raise ValueError(f"max_len must be non-negative, got {max_len}")
    prefix = list(prefix)
    if _has_cancelling_pair(prefix):
        return
    alphabet = search_alphabet(k)

    def extend(word: List[Letter], remaining: int) -> Iterator[AbstractWord]:
        if remaining == 0:
            yield tuple(word)
            return
        for letter in alphabet:
            if word and letter == (word[-1][0], -word[-1][1]):
                continue
            word.append(letter)
            yield from extend(word, remaining - 1)
            word.pop()

    for length in range(max(1, len(prefix)), max_len + 1):
        yield from extend(list(prefix), length - len(prefix))


def generator_names(k: int) -> List[str]:
    return [chr(ord("a") + g) if g < 26 else f"g{g}" for g in range(k)]


def format_abstract_word(word: Sequence[Letter], names: Optional[Sequence[str]] = None) -> str:
    if names is None:
        names = generator_names(max((g for g, _ in word), default=0) + 1)
    if not word:
        return "1"
    return " ".join(names[g] if sign > 0 else f"{names[g]}^-1" for g, sign in word)
