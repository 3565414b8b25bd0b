//! Fixtures shared by the engine benchmarks.

use relcalc_core::{BetaParams, BlockNode, ParamMap};

fn params(pairs: &[(&str, f64, f64)]) -> ParamMap {
    pairs
        .iter()
        .map(|(id, a, b)| {
            (
                id.to_string(),
                BetaParams::new(*a, *b).expect("valid shapes"),
            )
        })
        .collect()
}

/// Three components in series with beta(5,2), beta(3,2), beta(2,2).
pub fn three_series() -> (BlockNode, ParamMap) {
    (
        BlockNode::series_of(["s1", "s2", "s3"]),
        params(&[("s1", 5.0, 2.0), ("s2", 3.0, 2.0), ("s3", 2.0, 2.0)]),
    )
}

/// Five components: s1, (s2 ∥ s3), s4, s5 in series.
pub fn five_subsystem() -> (BlockNode, ParamMap) {
    let node = BlockNode::Series(vec![
        BlockNode::component("s1"),
        BlockNode::parallel_of(["s2", "s3"]),
        BlockNode::component("s4"),
        BlockNode::component("s5"),
    ]);
    let post = params(&[
        ("s1", 5.0, 2.0),
        ("s2", 3.0, 2.0),
        ("s3", 2.0, 2.0),
        ("s4", 7.0, 3.0),
        ("s5", 2.0, 10.0),
    ]);
    (node, post)
}
