use proptest::prelude::*;

use doxa_core::harness::{generate, GeneratorConfig};
use doxa_core::priors::{find_common_delusional_prior, find_common_standard_prior, separating_bet, PriorMode};
use doxa_core::reachability::{common_belief_set, s5_core};
use doxa_core::structures::{believes, classify, realize_probabilistic};
use doxa_core::{ProbabilisticBeliefStructure, State, StateSet};

fn structure() -> impl Strategy<Value = ProbabilisticBeliefStructure> {
    (any::<u64>(), 1usize..=6, 1usize..=3, 0u8..3, any::<bool>()).prop_map(|(seed, n, p, flavor, cp)| {
        let mut c = GeneratorConfig::new(seed, n, p);
        c.non_singular = flavor == 1;
        c.s5 = flavor == 2;
        c.common_prior = cp;
        generate(&c)
    })
}

fn subset(n: usize, mask: u32) -> StateSet {
    (0..n).filter(|k| mask & (1 << k) != 0).map(State).collect()
}

proptest! {
    #[test]
    fn possibility_sets_are_kd45(pbs in structure()) {
        let bs = pbs.belief_structure();
        for i in bs.players() {
            for s in bs.space().states() {
                let b = bs.belief(i, s);
                prop_assert!(!b.is_empty());
                prop_assert!(b.is_subset(bs.partition(i).cell_of(s)));
                for t in b {
                    prop_assert_eq!(bs.belief(i, *t), b);
                }
                let deluded = !b.contains(&s);
                prop_assert_eq!(deluded, *pbs.type_at(i, s).mass(s) == doxa_core::rational::zero());
            }
        }
    }

    #[test]
    fn s5_iff_beliefs_are_cells(pbs in structure()) {
        let bs = pbs.belief_structure();
        let cells = bs.players().all(|i| bs.space().states().all(|s| bs.belief(i, s) == bs.partition(i).cell_of(s)));
        prop_assert_eq!(bs.is_s5(), cells);
        prop_assert_eq!(bs.is_s5(), classify(&bs).deluded.iter().all(StateSet::is_empty));
    }

    #[test]
    fn belief_operator_algebra(pbs in structure(), e in any::<u32>(), f in any::<u32>()) {
        let bs = pbs.belief_structure();
        let n = bs.space().len();
        let (e, f) = (subset(n, e), subset(n, f));
        let both: StateSet = e.intersection(&f).copied().collect();
        for i in bs.players() {
            let be = believes(&bs, i, &e);
            let bf = believes(&bs, i, &f);
            let meet: StateSet = be.intersection(&bf).copied().collect();
            prop_assert_eq!(believes(&bs, i, &both), meet);
            prop_assert!(be.is_subset(&believes(&bs, i, &be)));
        }
    }

    #[test]
    fn uniform_realization_keeps_beliefs(pbs in structure()) {
        let bs = pbs.belief_structure();
        prop_assert_eq!(realize_probabilistic(&bs).belief_structure(), bs);
    }

    #[test]
    fn common_belief_sets_are_closed(pbs in structure()) {
        let bs = pbs.belief_structure();
        for s in bs.space().states() {
            let q = common_belief_set(&bs, s).members;
            for t in &q {
                for i in bs.players() {
                    prop_assert!(bs.belief(i, *t).is_subset(&q));
                }
            }
            let core = s5_core(&bs, &q);
            prop_assert!(core.is_subset(&q));
            for t in &core {
                for i in bs.players() {
                    prop_assert!(bs.belief(i, *t).contains(t));
                }
            }
        }
    }

    #[test]
    fn prior_answers_come_with_certificates(pbs in structure()) {
        for mode in [PriorMode::Standard, PriorMode::Delusional] {
            let cert = doxa_core::priors::find_common_prior(&pbs, mode).unwrap();
            let sep = separating_bet(&pbs, mode).unwrap();
            prop_assert_eq!(cert.exists(), sep.is_none());
            if let Some(sep) = sep {
                prop_assert!(sep.verify(&pbs));
            }
        }
    }

    #[test]
    fn generated_common_priors_are_found(seed in any::<u64>(), n in 1usize..=6, p in 1usize..=3, s5 in any::<bool>()) {
        let mut c = GeneratorConfig::new(seed, n, p);
        c.common_prior = true;
        c.s5 = s5;
        let pbs = generate(&c);
        prop_assert!(find_common_delusional_prior(&pbs).unwrap().exists());
        if s5 {
            prop_assert!(find_common_standard_prior(&pbs).unwrap().exists());
        }
    }
}
