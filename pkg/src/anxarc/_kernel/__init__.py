"""Hot-path text kernels: compiled extension when available, pure Python otherwise.

Selection happens once at import. Set ``ANXARC_KERNEL=pure`` to force the
fallback (the benchmark and the equivalence tests do this); any other value,
or an import failure of the extension, is resolved automatically.
"""

from __future__ import annotations

import os

from . import pure

ANX = pure.ANX
CALM = pure.CALM

if os.environ.get("ANXARC_KERNEL", "").strip().lower() == "pure":
    _impl = pure
else:
    try:
        from . import _ckernel as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = pure

IMPL: str = "compiled" if _impl is not pure else "pure"

tokenize = _impl.tokenize
score_tokens = _impl.score_tokens
score_text = _impl.score_text
