use std::path::PathBuf;

use proptest::prelude::*;

use doxa::format::{read_market, read_structure, write_market, write_structure};
use doxa_core::harness::{generate, GeneratorConfig};

fn golden(name: &str) -> String {
    std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)).unwrap()
}

#[test]
fn golden_structures_are_canonical() {
    for name in ["example1.structure", "example2.structure", "example3.structure", "example3-closing.structure"] {
        let text = golden(name);
        assert_eq!(write_structure(&read_structure(&text).unwrap()), text, "{name}");
    }
}

#[test]
fn golden_market_is_canonical() {
    let text = golden("cascade.market");
    let config = read_market(&text).unwrap();
    assert_eq!(write_market(&config), text);
    assert_eq!(read_market(&write_market(&config)).unwrap(), config);
}

proptest! {
    #[test]
    fn generated_structures_round_trip(
        seed in any::<u64>(),
        states in 1usize..=7,
        players in 1usize..=3,
        flavor in 0u8..3,
        common_prior in any::<bool>(),
    ) {
        let mut config = GeneratorConfig::new(seed, states, players);
        config.non_singular = flavor == 1;
        config.s5 = flavor == 2;
        config.common_prior = common_prior;
        let pbs = generate(&config);
        let once = write_structure(&pbs);
        let back = read_structure(&once).unwrap();
        prop_assert_eq!(&back, &pbs);
        prop_assert_eq!(write_structure(&back), once);
    }
}
