use hyperentropy::enumerate::random_instance;
use hyperentropy::hypergraph::CycleClass;
use hyperentropy_cli::format::{parse, to_json, to_text};
use proptest::prelude::*;

#[test]
fn thousand_random_instances_round_trip() {
    let mut checked = 0;
    for seed in 0..1000u64 {
        let class = CycleClass::ALL[(seed % 3) as usize];
        let k = 3 + (seed / 3 % 4) as usize;
        let m = 2 + (seed / 12 % 12) as usize;
        let Ok(h) = random_instance(class, k, m, seed) else {
            continue;
        };
        assert_eq!(parse(&to_text(&h)).unwrap(), h);
        assert_eq!(parse(&to_json(&h)).unwrap(), h);
        assert_eq!(to_text(&parse(&to_text(&h)).unwrap()), to_text(&h));
        checked += 1;
    }
    assert!(checked >= 990, "{checked}");
}

proptest! {
    #[test]
    fn layout_noise_is_ignored(seed in any::<u64>(), pad in "[ \t]{0,3}", comment in "[a-z ]{0,8}") {
        let h = random_instance(CycleClass::Unicyclic, 3, 5, seed).unwrap();
        let noisy: String = to_text(&h)
            .lines()
            .map(|l| format!("{pad}{}{pad} # {comment}\n\n", l.split(' ').collect::<Vec<_>>().join(&format!(" {pad}"))))
            .collect();
        prop_assert_eq!(parse(&noisy).unwrap(), h);
    }

    #[test]
    fn garbage_never_panics(s in "\\PC{0,64}") {
        let _ = parse(&s);
    }
}
