//! Population management and the hybrid evolutionary ranking driver.

use std::time::Instant;

use rand::Rng;

use crate::dataset::Dataset;
use crate::ranking::Permutation;
use crate::solver::borda::randomized_borda;
use crate::solver::cpsc::cpsc;
use crate::solver::lads::lads_engine;
use crate::solver::{Counters, SolverParams};

/// A population member with its cached fitness sum and insertion stamp.
#[derive(Clone, Debug)]
pub struct Member {
    perm: Permutation,
    fitness_sum: u64,
    stamp: u64,
}

impl Member {
    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    pub fn fitness_sum(&self) -> u64 {
        self.fitness_sum
    }
}

/// Fixed-size pool of pairwise-distinct permutations.
#[derive(Clone, Debug, Default)]
pub struct Population {
    members: Vec<Member>,
    next_stamp: u64,
}

impl Population {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.members.iter().any(|m| &m.perm == p)
    }

    /// Member with the smallest fitness sum.
    pub fn best(&self) -> &Member {
        self.members
            .iter()
            .min_by_key(|m| m.fitness_sum)
            .expect("population is nonempty")
    }

    fn push(&mut self, perm: Permutation, fitness_sum: u64) {
        let stamp = self.next_stamp;
        self.next_stamp += 1;
        self.members.push(Member {
            perm,
            fitness_sum,
            stamp,
        });
    }

    /// Index of the worst member; ties go to the oldest.
    fn worst_index(&self) -> usize {
        self.members
            .iter()
            .enumerate()
            .max_by_key(|(_, m)| (m.fitness_sum, u64::MAX - m.stamp))
            .map(|(i, _)| i)
            .expect("population is nonempty")
    }
}

/// Builds the initial population: randomized-Borda seeds improved by LADS,
/// kept only when distinct. After `10·T` attempts the remaining slots are
/// filled from LADS-improved uniform random permutations; if even those
/// collide the population is capped below `T` with a warning.
pub fn population_init<R: Rng + ?Sized>(
    d: &Dataset,
    params: &SolverParams,
    rng: &mut R,
) -> Population {
    population_init_engine(d, params, rng, None, &mut Counters::default())
}

pub(crate) fn population_init_engine<R: Rng + ?Sized>(
    d: &Dataset,
    params: &SolverParams,
    rng: &mut R,
    deadline: Option<Instant>,
    counters: &mut Counters,
) -> Population {
    let target = params.pop_size;
    let attempt_cap = 10 * target;
    let mut pop = Population::default();

    let improve_and_insert =
        |pop: &mut Population, seed: Permutation, rng: &mut R, counters: &mut Counters| {
            let out = lads_engine(&seed, d, params, rng, deadline, &mut |_| {});
            counters.iterations += out.iterations;
            counters.evaluations += out.evaluations;
            if !pop.contains(&out.best) {
                pop.push(out.best, out.best_sum);
            }
        };

    let mut attempts = 0;
    while pop.len() < target && attempts < attempt_cap {
        if past(deadline) {
            break;
        }
        attempts += 1;
        let seed = randomized_borda(d, params.beta, rng);
        improve_and_insert(&mut pop, seed, rng, counters);
    }

    let mut attempts = 0;
    while pop.len() < target && attempts < attempt_cap {
        if past(deadline) {
            break;
        }
        attempts += 1;
        let seed = Permutation::random(d.universe_size(), rng);
        improve_and_insert(&mut pop, seed, rng, counters);
    }

    if pop.len() < target {
        log::warn!(
            "population capped at {} of {} requested members",
            pop.len(),
            target
        );
    }
    pop
}

/// Replaces the worst member when the child strictly improves on it and
/// differs from every member. Returns whether the population changed.
pub fn population_update(pop: &mut Population, child: &Permutation, child_sum: u64) -> bool {
    if pop.contains(child) {
        return false;
    }
    let worst = pop.worst_index();
    if child_sum < pop.members[worst].fitness_sum {
        let stamp = pop.next_stamp;
        pop.next_stamp += 1;
        pop.members[worst] = Member {
            perm: child.clone(),
            fitness_sum: child_sum,
            stamp,
        };
        true
    } else {
        false
    }
}

pub(crate) struct HerOutcome {
    pub best: Permutation,
    pub best_sum: u64,
    pub generations: u64,
    pub counters: Counters,
}

/// One HER run: population initialization, then generations of
/// crossover + local search + population updating until `max_gens`
/// generations pass without improvement or the deadline is hit.
pub(crate) fn her_engine<R: Rng + ?Sized>(
    d: &Dataset,
    params: &SolverParams,
    rng: &mut R,
    deadline: Option<Instant>,
) -> HerOutcome {
    let mut counters = Counters::default();
    let mut pop = population_init_engine(d, params, rng, deadline, &mut counters);
    let best_member = pop.best();
    let mut best = best_member.permutation().clone();
    let mut best_sum = best_member.fitness_sum();
    let mut idle_gens: u64 = 0;
    let mut generations: u64 = 0;

    while pop.len() >= 2 {
        if past(deadline) {
            break;
        }
        let (u, v) = random_distinct_pair(pop.len(), rng);
        let child = cpsc(
            pop.members[u].permutation(),
            pop.members[v].permutation(),
            rng,
        );
        let out = lads_engine(&child, d, params, rng, deadline, &mut |_| {});
        counters.iterations += out.iterations;
        counters.evaluations += out.evaluations;
        generations += 1;
        if out.best_sum < best_sum {
            best = out.best.clone();
            best_sum = out.best_sum;
            idle_gens = 0;
        } else {
            idle_gens += 1;
        }
        if idle_gens > params.max_gens {
            break;
        }
        population_update(&mut pop, &out.best, out.best_sum);
    }

    HerOutcome {
        best,
        best_sum,
        generations,
        counters,
    }
}

fn past(deadline: Option<Instant>) -> bool {
    deadline.is_some_and(|d| Instant::now() >= d)
}

fn random_distinct_pair<R: Rng + ?Sized>(len: usize, rng: &mut R) -> (usize, usize) {
    let i = rng.random_range(0..len);
    let mut j = rng.random_range(0..len - 1);
    if j >= i {
        j += 1;
    }
    (i, j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::fitness_sum;
    use crate::ranking::Label;
    use crate::solver::borda::borda;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn perm(values: &[u32]) -> Permutation {
        Permutation::from_order(values.iter().map(|&v| Label::new(v)).collect()).unwrap()
    }

    fn random_dataset(m: usize, n: usize, rng: &mut ChaCha8Rng) -> Dataset {
        let perms = (0..n).map(|_| Permutation::random(m, rng)).collect();
        Dataset::from_permutations(perms).unwrap()
    }

    fn fast_params() -> SolverParams {
        SolverParams {
            max_iters: 300,
            ..SolverParams::default()
        }
    }

    #[test]
    fn init_produces_distinct_members() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let d = random_dataset(8, 10, &mut rng);
        let pop = population_init(&d, &fast_params(), &mut rng);
        assert_eq!(pop.len(), 20);
        for (i, a) in pop.members().iter().enumerate() {
            for b in &pop.members()[i + 1..] {
                assert_ne!(a.permutation(), b.permutation());
            }
            assert_eq!(fitness_sum(a.permutation(), &d), a.fitness_sum());
        }
    }

    #[test]
    fn init_caps_population_on_two_label_universe() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        // Balanced profile: both orderings tie, so both survive LADS and the
        // population reaches the 2-permutation ceiling.
        let balanced = Dataset::new(
            2,
            vec![
                crate::ranking::Ranking::parse("1|2", 2).unwrap(),
                crate::ranking::Ranking::parse("2|1", 2).unwrap(),
            ],
        )
        .unwrap();
        let pop = population_init(&balanced, &fast_params(), &mut rng);
        assert_eq!(pop.len(), 2);

        // Unique optimum: every LADS pass converges to it, capping at 1.
        let skewed = random_dataset(2, 5, &mut rng);
        let pop = population_init(&skewed, &fast_params(), &mut rng);
        assert_eq!(pop.len(), 1);
    }

    #[test]
    fn update_rules() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let d = random_dataset(5, 8, &mut rng);
        let mut pop = Population::default();
        for values in [[1u32, 2, 3, 4, 5], [2, 1, 3, 4, 5], [3, 2, 1, 4, 5]] {
            let p = perm(&values);
            let sum = fitness_sum(&p, &d);
            pop.push(p, sum);
        }
        let worst_before = pop.members()[pop.worst_index()].fitness_sum();

        // Identical child is rejected outright.
        let duplicate = pop.members()[0].permutation().clone();
        assert!(!population_update(&mut pop, &duplicate, 0));

        // Equal fitness is not an improvement.
        let equal = perm(&[4, 5, 1, 2, 3]);
        assert!(!population_update(&mut pop, &equal, worst_before));

        // Strictly better child replaces the worst member.
        let better = perm(&[5, 4, 3, 2, 1]);
        assert!(population_update(&mut pop, &better, worst_before - 1));
        assert!(pop.contains(&better));
        assert!(pop
            .members()
            .iter()
            .all(|m| m.fitness_sum() <= worst_before));
    }

    #[test]
    fn worst_ties_break_to_the_oldest() {
        let mut pop = Population::default();
        pop.push(perm(&[1, 2, 3]), 7);
        pop.push(perm(&[2, 1, 3]), 7);
        pop.push(perm(&[3, 2, 1]), 3);
        assert_eq!(pop.worst_index(), 0);
        assert!(population_update(&mut pop, &perm(&[1, 3, 2]), 5));
        assert!(!pop.contains(&perm(&[1, 2, 3])));
        assert!(pop.contains(&perm(&[2, 1, 3])));
    }

    #[test]
    fn her_never_loses_to_borda() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for seed in 0..5u64 {
            let d = random_dataset(7, 9, &mut rng);
            let mut borda_rng = ChaCha8Rng::seed_from_u64(seed);
            let borda_perm = borda(&d, &mut borda_rng);
            let mut her_rng = ChaCha8Rng::seed_from_u64(seed);
            let out = her_engine(&d, &fast_params(), &mut her_rng, None);
            assert!(out.best_sum <= fitness_sum(&borda_perm, &d));
            assert_eq!(fitness_sum(&out.best, &d), out.best_sum);
        }
    }

    #[test]
    fn her_finds_small_instance_optima() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut hits = 0;
        for _ in 0..20 {
            let d = random_dataset(5, 10, &mut rng);
            let optimum = crate::testutil::all_permutations(5)
                .iter()
                .map(|p| fitness_sum(p, &d))
                .min()
                .unwrap();
            let out = her_engine(&d, &fast_params(), &mut rng, None);
            if out.best_sum == optimum {
                hits += 1;
            }
        }
        assert!(hits >= 19, "only {hits}/20 runs found the optimum");
    }
}
