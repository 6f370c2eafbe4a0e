"""
Position-free edit scripts between word forms.

A script is the left-to-right list of (deleted, added) substring pairs that
turns one form into another, e.g. ``edit_script("parle", "parla")`` is
``[("e", "a")]``. Two scripts are equal when those pairs are equal; the
boundary flags only tell ``apply_script`` where an edit may sit in a new word.
"""

from collections import namedtuple

import numpy as np

from paradigms.exceptions import ScriptNotApplicable

EditOp = namedtuple(
    "EditOp", ["deleted", "added", "at_start", "at_end"], defaults=[False, False]
)

SPECIAL_CHARACTERS = ">;^$\\"

# alignment moves, in the order ties between them are broken
MATCH, DELETE, INSERT, SUBSTITUTE = range(4)


class EditScript:
    __slots__ = ("ops",)

    def __init__(self, ops=()):
        self.ops = tuple(EditOp(*op) for op in ops)
        for op in self.ops:
            if not op.deleted and not op.added:
                raise ValueError("an edit must delete or add something")

    @property
    def key(self):
        return tuple((op.deleted, op.added) for op in self.ops)

    def __eq__(self, other):
        if not isinstance(other, EditScript):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __len__(self):
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)

    def __bool__(self):
        return bool(self.ops)

    def __str__(self):
        return serialize_script(self)

    def __repr__(self):
        return "EditScript({!r})".format(serialize_script(self))


def _move(a, b, i, j, move):
    """The state after ``move`` from (i, j), or None where it does not apply."""
    if move == MATCH:
        if i < len(a) and j < len(b) and a[i] == b[j]:
            return i + 1, j + 1
    elif move == DELETE:
        if i < len(a):
            return i + 1, j
    elif move == INSERT:
        if j < len(b):
            return i, j + 1
    elif i < len(a) and j < len(b) and a[i] != b[j]:
        return i + 1, j + 1
    return None


def _alignment_costs(a, b):
    # costs[inside][i][j] = (edits, gaps) of the best alignment of a[i:] and
    # b[j:]; inside is 1 when the previous move was an edit
    n, m = len(a), len(b)
    costs = [[[None] * (m + 1) for _ in range(n + 1)] for _ in range(2)]
    for i in range(n, -1, -1):
        for j in range(m, -1, -1):
            for inside in (0, 1):
                if i == n and j == m:
                    costs[inside][i][j] = (0, 0)
                    continue
                options = []
                for move in (MATCH, DELETE, INSERT, SUBSTITUTE):
                    state = _move(a, b, i, j, move)
                    if state is None:
                        continue
                    options.append(_add(costs, inside, move, state))
                costs[inside][i][j] = min(options)
    return costs


def _add(costs, inside, move, state):
    i, j = state
    if move == MATCH:
        return costs[0][i][j]
    edits, gaps = costs[1][i][j]
    return edits + 1, gaps + (0 if inside else 1)


def _alignment_gaps(a, b):
    """
    Walk a minimum-edit alignment of ``a`` and ``b`` with the fewest unaligned
    regions, matching equal characters as early as possible, and return the
    unaligned regions as [a_start, a_end, b_start, b_end] spans.
    """
    costs = _alignment_costs(a, b)
    gaps = []
    gap_start = None
    i = j = inside = 0
    while i < len(a) or j < len(b):
        target = costs[inside][i][j]
        for move in (MATCH, DELETE, INSERT, SUBSTITUTE):
            state = _move(a, b, i, j, move)
            if state is not None and _add(costs, inside, move, state) == target:
                break
        if move == MATCH:
            if gap_start is not None:
                gaps.append([gap_start[0], i, gap_start[1], j])
                gap_start = None
        elif gap_start is None:
            gap_start = (i, j)
        i, j = state
        inside = 0 if move == MATCH else 1
    if gap_start is not None:
        gaps.append([gap_start[0], len(a), gap_start[1], len(b)])
    return gaps


def _locate(op, word, pos):
    """Where ``op.deleted`` sits in ``word`` at or after ``pos``, or None."""
    deleted = op.deleted
    if op.at_start and op.at_end:
        return 0 if pos == 0 and word == deleted else None
    if op.at_start:
        return 0 if pos == 0 and word.startswith(deleted) else None
    if op.at_end:
        start = len(word) - len(deleted)
        return start if start >= pos and word.endswith(deleted) else None
    if not deleted:
        return None
    start = word.find(deleted, pos)
    return start if start >= 0 else None


def _span_op(span, a, b):
    a_start, a_end, b_start, b_end = span
    return EditOp(
        a[a_start:a_end], b[b_start:b_end], a_start == 0, a_end == len(a)
    )


def edit_script(a, b):
    """
    The canonical edit script from ``a`` to ``b``.

    Interior edits that ``apply_script`` could not find again in ``a`` (pure
    insertions, or a deleted substring that also occurs earlier in the word)
    are widened leftwards over aligned characters until they can; an edit
    that grows into its neighbour is merged with it.
    """
    if not a and not b:
        raise ValueError("cannot compute an edit script between two empty words")

    spans = _alignment_gaps(a, b)
    index = 0
    while index < len(spans):
        pos = spans[index - 1][1] if index else 0
        span = spans[index]
        if _locate(_span_op(span, a, b), a, pos) == span[0]:
            index += 1
            continue
        span[0] -= 1
        span[2] -= 1
        if index and span[0] == spans[index - 1][1]:
            previous = spans.pop(index - 1)
            span[0], span[2] = previous[0], previous[2]
            index -= 1
    return EditScript(_span_op(span, a, b) for span in spans)


def apply_script(script, word):
    """Apply ``script`` to ``word``; raises ScriptNotApplicable if it can't."""
    pieces = []
    pos = 0
    for op in script.ops:
        start = _locate(op, word, pos)
        if start is None:
            raise ScriptNotApplicable(
                "{!r} cannot be applied to {!r}".format(op.deleted, word)
            )
        pieces.append(word[pos:start])
        pieces.append(op.added)
        pos = start + len(op.deleted)
    pieces.append(word[pos:])
    return "".join(pieces)


def try_apply(script, word):
    """``apply_script`` that returns None when the script does not fire."""
    try:
        return apply_script(script, word)
    except ScriptNotApplicable:
        return None


def levenshtein(a, b):
    """Unit-cost insert/delete/substitute distance between two words."""
    if a == b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, char_a in enumerate(a, start=1):
        current = [i]
        for j, char_b in enumerate(b, start=1):
            current.append(
                min(
                    previous[j] + 1,
                    current[j - 1] + 1,
                    previous[j - 1] + (char_a != char_b),
                )
            )
        previous = current
    return previous[-1]


def levenshtein_matrix(xs, ys):
    """
    Levenshtein distances between every word of ``xs`` and every word of
    ``ys`` as an integer array of shape (len(xs), len(ys)).

    The dynamic programme runs once per word of ``xs``, vectorised over all of
    ``ys`` (padded to the longest word; a padded column never feeds the cell
    read back for a shorter word).
    """
    result = np.zeros((len(xs), len(ys)), dtype=np.int64)
    if not len(xs) or not len(ys):
        return result
    width = max(len(y) for y in ys)
    codes = np.full((len(ys), width), -1, dtype=np.int64)
    for row, y in enumerate(ys):
        codes[row, : len(y)] = [ord(char) for char in y]
    lengths = np.array([len(y) for y in ys])
    rows = np.arange(len(ys))
    first_row = np.tile(np.arange(width + 1, dtype=np.int64), (len(ys), 1))

    for row, x in enumerate(xs):
        previous = first_row
        for i, char in enumerate(x, start=1):
            cost = (codes != ord(char)).astype(np.int64)
            best = np.minimum(previous[:, :-1] + cost, previous[:, 1:] + 1)
            current = np.empty_like(previous)
            current[:, 0] = i
            for j in range(1, width + 1):
                current[:, j] = np.minimum(best[:, j - 1], current[:, j - 1] + 1)
            previous = current
        result[row] = previous[rows, lengths]
    return result


def _escape(text):
    return "".join("\\" + char if char in SPECIAL_CHARACTERS else char for char in text)


def _unescape(text):
    chars = []
    escaped = False
    for char in text:
        if escaped or char != "\\":
            chars.append(char)
            escaped = False
        else:
            escaped = True
    return "".join(chars)


def _split_unescaped(text, separator):
    parts, current = [], []
    escaped = False
    for char in text:
        if escaped:
            current.append("\\" + char)
            escaped = False
        elif char == "\\":
            escaped = True
        elif char == separator:
            parts.append("".join(current))
            current = []
        else:
            current.append(char)
    if escaped:
        raise ValueError("dangling escape in {!r}".format(text))
    parts.append("".join(current))
    return parts


def serialize_script(script):
    """``del1>add1;del2>add2`` with ``^``/``$`` marking start/end anchored edits."""
    return ";".join(
        "{}{}{}>{}".format(
            "^" if op.at_start else "",
            "$" if op.at_end else "",
            _escape(op.deleted),
            _escape(op.added),
        )
        for op in script.ops
    )


def parse_script(text):
    if not text:
        return EditScript()
    ops = []
    for part in _split_unescaped(text, ";"):
        at_start = part.startswith("^")
        if at_start:
            part = part[1:]
        at_end = part.startswith("$")
        if at_end:
            part = part[1:]
        sides = _split_unescaped(part, ">")
        if len(sides) != 2:
            raise ValueError("malformed edit {!r}".format(part))
        ops.append(
            EditOp(_unescape(sides[0]), _unescape(sides[1]), at_start, at_end)
        )
    return EditScript(ops)
