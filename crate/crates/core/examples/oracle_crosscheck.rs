//! Cross-checks the automaton pipeline against the brute-force game
//! search on a seeded random corpus.

use std::sync::Arc;

use stateattack::attack_observer::build_attack_observer;
use stateattack::corpus::{corpus, Flavor, Limits};
use stateattack::enforcement::{enforce, TypeIIReading};
use stateattack::oracle::{oracle_check_enforced, oracle_check_violation};
use stateattack::violation::verify;

fn main() {
    let (mut agree, mut violating, mut enforced) = (0, 0, 0);
    let instances = corpus(1, 200, Flavor::General, &Limits::default());
    for inst in &instances {
        let aobs = Arc::new(build_attack_observer(&inst.plant, &inst.spec).unwrap());
        let v = verify(aobs.clone()).verdict;
        let e = enforce(aobs.clone(), TypeIIReading::AllResults).verdict;
        let ov = oracle_check_violation(&inst.plant, &inst.spec, aobs.len());
        let oe = oracle_check_enforced(&inst.plant, &inst.spec, aobs.len());
        if v == ov && e == oe {
            agree += 1;
        } else {
            println!("seed {}: pipeline ({v}, {e}) oracle ({ov}, {oe})", inst.seed);
        }
        violating += v as usize;
        enforced += e as usize;
    }
    println!("{agree}/{} agree; {violating} violating, {enforced} enforced", instances.len());
}
