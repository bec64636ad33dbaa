"""Limited-feedback interference alignment for the two-cell interfering MAC."""
from .channel import ChannelSet, SystemConfig, sample_channels
from .codebook import CodebookSet, compound_codeword, generate_codebooks
from .harness import SweepRecord, SweepSpec, run_sweep, run_trial, write_csv
from .rxdesign import (build_rx, interference_gram, optimal_receive_basis,
                       per_user_rate, perfect_feedback_rate, residual_ici, rho_k)
from .theory import (flop_estimate, loss_upper_bound, min_rho_expectation,
                     rate_lower_bound, sample_wishart)
from .txdesign import ideal_alignment_tb, quantize_chordal, quantize_joint

__version__ = "0.1.0"
