"""Grammar compression via induced suffix sorting.

Compression factors the text the way an induced suffix sort would,
naming the factors level by level; the resulting grammar supports plain
decompression, random-access substring extraction (EF profile), and
suffix/lcp array construction as decompression byproducts.
"""

from .decode import decompress
from .extract import build_extract_index, extract
from .format import ContainerError, deserialize, serialize
from .grammar import Grammar, GrammarLevel, compress
from .sais import build_suffix_array
from .salcp import decompress_with_sa, decompress_with_sa_lcp

__version__ = "0.1.0"

__all__ = [
    "Grammar",
    "GrammarLevel",
    "ContainerError",
    "compress",
    "decompress",
    "serialize",
    "deserialize",
    "build_extract_index",
    "extract",
    "build_suffix_array",
    "decompress_with_sa",
    "decompress_with_sa_lcp",
    "__version__",
]