from .rings import RingDescriptor, RingKind, Operation, Scalar
from .matrix import Matrix, block_diagonal, all_matrices
from .linalg import (ColumnSpan, SplitBasis, rank, kernel_basis, fix_basis,
                     image_basis, left_kernel_basis, complement, projection,
                     inverse, is_pure)
from .idempotents import (IdempotentCertificate, PeirceBasis, DependenceWitness,
                          is_idempotent, idempotent_certificate, idempotent_between,
                          orthogonal_sum_idempotent, kernel_idempotent_avoiding_fix,
                          kernel_projection, conjugate, min_valuation_dependence)
