//! Strategies addressable by name, with `name(arg,...)` parameter syntax.

use super::{
    AnyStrategy, C3ComponentsToucher, CycleSegmentIsolator, K4ComponentsToucher,
    LeafPriorityIsolator, MaxDangerStrategy, PairingToucher, PairingVariant,
    PathSegmentIsolator, RandomStrategy, StrategyError, TwoRegularIsolator,
};
use crate::graph::Graph;

pub fn strategy_names() -> &'static [&'static str] {
    &[
        "max_danger",
        "pairing",
        "pairing_outgoing",
        "leaf_priority",
        "cycle_segment",
        "path_segment",
        "two_regular",
        "k4_components",
        "c3_components",
        "random(seed)",
    ]
}

/// Builds a strategy from a spec string like `max_danger`, `random(7)` or
/// `cycle_segment` (segment strategies take their size from the graph).
pub fn build_strategy(spec: &str, graph: &Graph) -> Result<AnyStrategy, StrategyError> {
    let spec = spec.trim();
    let (name, args) = match spec.find('(') {
        Some(open) if spec.ends_with(')') => (&spec[..open], &spec[open + 1..spec.len() - 1]),
        Some(_) => return Err(StrategyError::UnknownStrategy(spec.to_string())),
        None => (spec, ""),
    };
    let no_args = |s: AnyStrategy| {
        if args.is_empty() {
            Ok(s)
        } else {
            Err(StrategyError::BadArguments {
                name: name.to_string(),
                args: args.to_string(),
                reason: "expected no arguments".to_string(),
            })
        }
    };
    match name {
        "max_danger" => no_args(AnyStrategy::MaxDanger(MaxDangerStrategy::new())),
        "pairing" => no_args(AnyStrategy::Pairing(PairingToucher::new(graph))),
        "pairing_outgoing" => no_args(AnyStrategy::Pairing(PairingToucher::with_variant(
            graph,
            PairingVariant::Outgoing,
        ))),
        "leaf_priority" => no_args(AnyStrategy::LeafPriority(LeafPriorityIsolator::new())),
        "cycle_segment" => no_args(AnyStrategy::CycleSegment(CycleSegmentIsolator::new(
            graph.vertex_count(),
        ))),
        "path_segment" => no_args(AnyStrategy::PathSegment(PathSegmentIsolator::new(
            graph.vertex_count(),
        ))),
        "two_regular" => no_args(AnyStrategy::TwoRegular(TwoRegularIsolator::new())),
        "k4_components" => no_args(AnyStrategy::K4Components(K4ComponentsToucher::new())),
        "c3_components" => no_args(AnyStrategy::C3Components(C3ComponentsToucher::new())),
        "random" => {
            let seed: u64 = args.trim().parse().map_err(|_| StrategyError::BadArguments {
                name: "random".to_string(),
                args: args.to_string(),
                reason: "expected random(seed)".to_string(),
            })?;
            Ok(AnyStrategy::Random(RandomStrategy::new(seed)))
        }
        _ => Err(StrategyError::UnknownStrategy(spec.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::cycle;
    use crate::strategy::Strategy;

    #[test]
    fn builds_by_name() {
        let g = cycle(5).unwrap();
        assert_eq!(build_strategy("max_danger", &g).unwrap().name(), "max_danger");
        assert_eq!(build_strategy("random(9)", &g).unwrap().name(), "random(9)");
        assert!(build_strategy("nonesuch", &g).is_err());
        assert!(build_strategy("random(x)", &g).is_err());
        assert!(build_strategy("max_danger(3)", &g).is_err());
    }
}
