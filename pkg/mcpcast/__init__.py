from .api import *
from .version import __version__
from .module import PriceForecaster

from . import dataset
from . import dispatch
from . import forest
from . import linear
from . import metric
from . import neural
from . import solver
from . import storage
from . import transforms
from . import utils
