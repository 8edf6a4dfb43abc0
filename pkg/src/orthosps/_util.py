import re

_DIGITS = re.compile(r"(\d+)")

# carriers above this size are refused by anything that enumerates subsets
SIZE_CAP = 20


def natural_key(name):
    """Sort key that orders ``"2"`` before ``"10"`` and is total on strings."""
    parts = _DIGITS.split(name)
    return tuple((0, int(p), p) if i % 2 else (1, 0, p) for i, p in enumerate(parts))


def canonical(names):
    return tuple(sorted(set(names), key=natural_key))


def bits(mask):
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def names_of(mask, carrier):
    return [carrier[i] for i in bits(mask)]


def mask_of(names, index, error):
    m = 0
    for x in names:
        try:
            m |= 1 << index[x]
        except KeyError:
            raise error(f"unknown identifier {x!r}", witness=x) from None
    return m


def set_key(names):
    """Canonical order for families of named sets: by size, then members."""
    return (len(names), [natural_key(x) for x in names])
