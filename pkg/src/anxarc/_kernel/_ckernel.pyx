# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled text kernels. Mirrors ``anxarc._kernel.pure`` exactly.

Single scan over the code points of the lower-cased input; chunk boundaries
follow Py_UNICODE_ISSPACE (the same classification ``str.split`` uses) and
edge stripping follows Py_UNICODE_ISALNUM (the same classification
single-character ``str.isalnum`` uses), so both kernels agree on every input.
"""

from cpython.unicode cimport Py_UNICODE_ISALNUM, Py_UNICODE_ISSPACE

ANX = 1
CALM = 2

cdef int _C_ANX = 1
cdef int _C_CALM = 2


cdef inline bint _has_url_prefix(str s, Py_ssize_t a, Py_ssize_t b):
    # "http://", "https://", or "www." starting at position a.
    cdef Py_ssize_t m = b - a
    if m >= 7 and <Py_UCS4>s[a] == u'h' and <Py_UCS4>s[a + 1] == u't' \
            and <Py_UCS4>s[a + 2] == u't' and <Py_UCS4>s[a + 3] == u'p':
        if <Py_UCS4>s[a + 4] == u':' and <Py_UCS4>s[a + 5] == u'/' \
                and <Py_UCS4>s[a + 6] == u'/':
            return True
        if m >= 8 and <Py_UCS4>s[a + 4] == u's' and <Py_UCS4>s[a + 5] == u':' \
                and <Py_UCS4>s[a + 6] == u'/' and <Py_UCS4>s[a + 7] == u'/':
            return True
    if m >= 4 and <Py_UCS4>s[a] == u'w' and <Py_UCS4>s[a + 1] == u'w' \
            and <Py_UCS4>s[a + 2] == u'w' and <Py_UCS4>s[a + 3] == u'.':
        return True
    return False


cdef object _clean_span(str s, Py_ssize_t a, Py_ssize_t b):
    # Returns the cleaned token for s[a:b], or None if the chunk is dropped.
    if _has_url_prefix(s, a, b):
        return None
    if <Py_UCS4>s[a] == u'@':
        return None
    while a < b and not Py_UNICODE_ISALNUM(<Py_UCS4>s[a]):
        a += 1
    while b > a and not Py_UNICODE_ISALNUM(<Py_UCS4>s[b - 1]):
        b -= 1
    if a >= b:
        return None
    if _has_url_prefix(s, a, b):
        return None
    return s[a:b]


def tokenize(str text):
    """Normalize ``text`` into a list of lower-case word tokens."""
    cdef str lowered = text.lower()
    cdef Py_ssize_t n = len(lowered)
    cdef Py_ssize_t i = 0
    cdef Py_ssize_t a
    cdef list out = []
    cdef object tok
    while i < n:
        while i < n and Py_UNICODE_ISSPACE(<Py_UCS4>lowered[i]):
            i += 1
        if i >= n:
            break
        a = i
        while i < n and not Py_UNICODE_ISSPACE(<Py_UCS4>lowered[i]):
            i += 1
        tok = _clean_span(lowered, a, i)
        if tok is not None:
            out.append(tok)
    return out


def score_tokens(list tokens, dict class_map):
    """Count (total, anxiety, calm) tokens of an already-tokenized post."""
    cdef Py_ssize_t n_anx = 0
    cdef Py_ssize_t n_calm = 0
    cdef object tok, cls
    cdef int c
    for tok in tokens:
        cls = class_map.get(tok)
        if cls is not None:
            c = cls
            if c == _C_ANX:
                n_anx += 1
            elif c == _C_CALM:
                n_calm += 1
    return len(tokens), n_anx, n_calm


def score_text(str text, dict class_map):
    """Fused tokenize-and-count: (n_tokens, n_anx, n_calm) for raw text."""
    cdef str lowered = text.lower()
    cdef Py_ssize_t n = len(lowered)
    cdef Py_ssize_t i = 0
    cdef Py_ssize_t a
    cdef Py_ssize_t n_tok = 0, n_anx = 0, n_calm = 0
    cdef object tok, cls
    cdef int c
    while i < n:
        while i < n and Py_UNICODE_ISSPACE(<Py_UCS4>lowered[i]):
            i += 1
        if i >= n:
            break
        a = i
        while i < n and not Py_UNICODE_ISSPACE(<Py_UCS4>lowered[i]):
            i += 1
        tok = _clean_span(lowered, a, i)
        if tok is None:
            continue
        n_tok += 1
        cls = class_map.get(tok)
        if cls is not None:
            c = cls
            if c == _C_ANX:
                n_anx += 1
            elif c == _C_CALM:
                n_calm += 1
    return n_tok, n_anx, n_calm
