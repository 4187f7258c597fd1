from .brute import (MonoidSnapshot, VerificationReport, singular_monoid, snapshot_of,
                    transformation_monoid, min_lengths_over, min_idempotent_lengths,
                    brute_height, idempotent_depth, verify_factorization)
