import numpy as np

from teachlab.concepts import ConceptClass

HALF_INTERVALS_TEXT = 'n=3\n000\n100\n110\n111\n011\n001\n'


def random_class(seed: int, n: int, size: int) -> ConceptClass:
    """`size` distinct concepts over [n], drawn without replacement."""
    rng = np.random.default_rng(seed)
    masks = rng.choice(1 << n, size=min(size, 1 << n), replace=False)
    return ConceptClass.from_masks(n, [int(m) for m in masks])
