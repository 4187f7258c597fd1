from .certificate import FactorizationCertificate, IdempotentFactorization, certify
from .field import (split_decomposable_kernel, split_unstable_kernel, split_stable_rank1,
                    factor_singular_field, factor_block_diagonal)
from .dvd import (AdaptedBasis, reduce_kernel_rank, adapted_basis, dge1_split_fixfree,
                  dge1_split_general, factor_singular_dvd, dvd_bound, reduce_mod_p)
