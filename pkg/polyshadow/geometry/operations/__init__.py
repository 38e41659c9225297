from .kernel import KernelOperations, Moments
from .cones import ConeOperations
from .isotropy import IsotropyOperations
from .shadow import ShadowOperations
from .steiner import SteinerOperations
from .lab import LabOperations

__all__ = [
    'KernelOperations',
    'Moments',
    'ConeOperations',
    'IsotropyOperations',
    'ShadowOperations',
    'SteinerOperations',
    'LabOperations',
]
