//! Point sets with many distinct slab closest pairs, each claim checked by
//! brute force.

use slabcp::lowerbound::{gen_corollary32, gen_hypercube, gen_multicopy, gen_theorem31, verify_claims, Construction};
use slabcp::{build_slab_partition, enumerate_bruteforce, SlabPartition};

fn show(c: &Construction) {
    let report = verify_claims(&c.points, &c.claims);
    let partition = match &c.boundaries {
        Some(b) => SlabPartition::from_boundaries(&c.points, b.clone()).unwrap(),
        None => build_slab_partition(&c.points, c.m).unwrap(),
    };
    let count = enumerate_bruteforce(&c.points, &partition).count();
    println!(
        "{:<12} {:<28} n={:<5} m={:<4} claims {}/{} confirmed, |A(S, m)| = {count}",
        c.name,
        c.params.to_string(),
        c.points.len(),
        c.m,
        report.confirmed,
        report.checked
    );
}

fn main() {
    for m in [3, 6, 10] {
        show(&gen_theorem31(m).unwrap().0);
    }
    show(&gen_corollary32(400, 30).unwrap().0);
    for k in [3, 5, 8] {
        let (c, spec) = gen_hypercube(k).unwrap();
        assert!(spec.verify_dominance());
        show(&c);
    }
    for (n, m) in [(32, 16), (128, 64), (256, 128)] {
        let (c, spec) = gen_multicopy(n, m).unwrap();
        println!(
            "  groups {:?}, delta {}, scale {}, bound {}",
            spec.groups.iter().map(|g| g.k).collect::<Vec<_>>(),
            spec.delta,
            spec.scale,
            spec.lower_bound
        );
        show(&c);
    }
}
