from .cone import Cone, ConeProps, GenericDirection, GenericDirectionProps
from .experiment import ExperimentConfig, ExperimentConfigProps, ExperimentRecord
from .inertia import AffineMap, Embedding, InertiaReport, InertiaReportProps
from .polytope import Face, Facet, Polytope, PolytopeProps
from .quadratic import QuadraticForm, QuadraticFormProps
from .shadow import ShadowDecomposition, ShadowFace
from .shared import GeometryObject, get_loader, load_object
from .steiner import SteinerResult
from .subspace import Subspace, SubspaceProps

__all__ = [
    'GeometryObject', 'get_loader', 'load_object',
    'Polytope', 'PolytopeProps', 'Face', 'Facet',
    'Subspace', 'SubspaceProps',
    'Cone', 'ConeProps', 'GenericDirection', 'GenericDirectionProps',
    'QuadraticForm', 'QuadraticFormProps',
    'InertiaReport', 'InertiaReportProps', 'AffineMap', 'Embedding',
    'ShadowDecomposition', 'ShadowFace',
    'SteinerResult',
    'ExperimentConfig', 'ExperimentConfigProps', 'ExperimentRecord',
]
