"""Exact characteristic-number calculus for hyperkähler bases of rational Sp^x bordism."""

from .graded_algebra import GeneratorSpec, GradedRing, Monomial, RingElement
from .partitions import Decoration, Partition, bordism_rank, enumerate_partitions, partition_count
from .char_calculus import (
    CharSeries,
    character_component,
    chern_to_pontryagin,
    newton_girard,
    verify_s_identity,
    whitney_sum,
)
from .torus_models import TorusModel, c1_class, c1_power_integral, p1_of_induced_su2, q_bundle_integral
from .manifold_catalog import (
    ChernDataRecord,
    HilbertData,
    ManifoldDescriptor,
    PontryaginNumbers,
    basis_elements,
    characteristic_number,
    chern_numbers_to_pontryagin_numbers,
    load_chern_data,
    load_default_data,
    product_pontryagin_numbers,
)
from .basis_certifier import (
    Certificate,
    CertMatrix,
    build_matrix,
    certify_basis,
    check_block_triangular,
    diagonal_block_scalar,
    exact_determinant,
)

__version__ = "0.1.0"
