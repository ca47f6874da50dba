"""Complex numbers in the ``RE±IMi`` text form (``2-3i``, ``6-4.2i``, ``7.3``, ``-i``)."""

import math
import re

_FLOAT = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX = re.compile(
    rf"""^\s*
    (?:(?P<re>[+-]?{_FLOAT})(?![\d.eEij]))?      # real part
    (?:(?P<im>[+-]?(?:{_FLOAT})?)[ij])?          # imaginary part with unit
    \s*$""",
    re.VERBOSE,
)


def parse_complex(text: str) -> complex:
    m = _COMPLEX.match(text)
    if not text.strip() or m is None or (m.group("re") is None and m.group("im") is None):
        raise ValueError(f"not a complex number: {text!r} (expected e.g. 2-3i, 7.3, 10.2+10.3i)")
    re_ = float(m.group("re")) if m.group("re") else 0.0
    im_text = m.group("im")
    if im_text is None:
        im_ = 0.0
    elif im_text in ("", "+"):
        im_ = 1.0
    elif im_text == "-":
        im_ = -1.0
    else:
        if m.group("re") and im_text[0] not in "+-":
            raise ValueError(f"not a complex number: {text!r}")
        im_ = float(im_text)
    z = complex(re_, im_)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"complex number must be finite: {text!r}")
    return z


def format_complex(z: complex, digits: int = None) -> str:
    """Render as ``RE±IMi``; exact (repr) floats unless ``digits`` is given."""
    z = complex(z)
    if digits is None:
        re_, im_ = repr(z.real), repr(abs(z.imag))
    else:
        re_, im_ = f"{z.real:.{digits}g}", f"{abs(z.imag):.{digits}g}"
    sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
    return f"{re_}{sign}{im_}i"
