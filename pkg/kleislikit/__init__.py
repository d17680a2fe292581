from .abskl1 import AbsKL1, check_codescent_profile, reflect
from .abskl2 import AbsKL2, check_theorem_2d_profile, lift_morphism
from .config import CorpusConfig, EngineConfig, load_config
from .exceptions import KleisliError, SizeGuardError
from .fincat import FinCategory
from .monadkit import Monad
from .pseudomonadkit import Pseudomonad
from .twocat import Fin2Category

__version__ = "0.1.0"
