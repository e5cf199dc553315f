from . import filesystem
from . import module_prologo
from . import module_status
from . import strings
