"""Bundled benchmark corpus: small graph pairs with known ground truth."""

from importlib import resources

__all__ = ["corpus_path"]


def corpus_path():
    """Filesystem path of the bundled corpus directory (contains manifest.json)."""
    return str(resources.files("thetaiso.data") / "corpus")
