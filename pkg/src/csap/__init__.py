"""csap: packet-loss-resilient audio streaming with sparse DCT-domain recovery.

Sender side permutes and interleaves each fixed-length frame across packets;
the receiver rebuilds a masked frame from the surviving packets and fills the
gaps by L1-minimal reconstruction in the DCT coefficient domain (with a
minimum-energy L2 baseline for comparison).
"""

from .signal_io import (
    AudioSignal,
    Frame,
    dequantize,
    frame_signal,
    load_wav,
    quantize,
    write_wav,
)
from .transform import DctBasis, analyze, build_dct_basis, coherence, synthesize
from .interleave import (
    InterleaveLayout,
    MaskedFrame,
    PermutationSpec,
    deinterleave_partial,
    depermute,
    frame_seed,
    gen_permutation,
    interleave,
    permute,
)
from .channel import (
    LossModel,
    PacketRecord,
    PacketTrace,
    apply_loss,
    collect_block,
    packetize,
    parse,
    serialize,
)
from .recovery import (
    RecoveryResult,
    SensingOperator,
    SensingSet,
    SolverConfig,
    SolverStatus,
    build_sensing,
    oracle_l1_small,
    recover_frame,
    recover_l1,
    recover_l2,
)
from .harness import (
    ExperimentConfig,
    TrialResult,
    pearson_corr,
    read_report,
    report_rows,
    residual,
    run_experiment,
    summarize,
    write_report,
)

__version__ = "0.1.0"
