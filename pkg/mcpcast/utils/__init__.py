from . import config
from . import cache
from . import random
