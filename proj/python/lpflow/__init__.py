from ._lpflow import (
    BallParams,
    ChainEstimate,
    ChainReport,
    Direction,
    FlowClassification,
    FlowVerdict,
    MomentSet,
    OrderVerdict,
    ProfileEstimate,
    RngStream,
    SchurScanReport,
    StopLossReport,
    b_constant,
    ball_volume,
    chain_check,
    char_fn_phi,
    classify,
    convex_order_test,
    coordinate_density,
    coordinate_moment,
    coordinate_profile_phi,
    cross_polytope_a0,
    endpoint_a0,
    laplace_m,
    laplace_m_chain,
    log_gamma,
    majorizes,
    moment_set,
    profile_a_tilde,
    r_limit,
    sample_uniform_ball,
    schur_scan,
    set_mc_threads,
    threshold_n,
)

__all__ = [name for name in dir() if not name.startswith("_")]
