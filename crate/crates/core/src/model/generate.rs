//! Seeded random instances for property suites.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Instance, Project, ProjectSet};
use crate::rational::{Money, Rational};

#[derive(Debug, Clone, PartialEq)]
pub enum BudgetRule {
    Fixed(Money),
    /// Uniform on the grid `{k / denominator}` within `[min, max]`.
    Uniform {
        min: Money,
        max: Money,
        denominator: u32,
    },
    /// A fixed fraction of the total project cost.
    FractionOfTotal(Money),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorParams {
    pub voters: usize,
    pub projects: usize,
    pub cost_min: Money,
    pub cost_max: Money,
    /// Costs are drawn from the grid `{k / cost_denominator}`.
    pub cost_denominator: u32,
    /// Probability that a voter approves a given project.
    pub approval_density: f64,
    pub budget: BudgetRule,
}

impl GeneratorParams {
    /// `n` voters, `m` projects, costs on the half-integer grid in `[1, 5]`,
    /// budget on the half-integer grid in `[m/2, 2m]`.
    pub fn small(voters: usize, projects: usize) -> Self {
        GeneratorParams {
            voters,
            projects,
            cost_min: Rational::from_integer(1),
            cost_max: Rational::from_integer(5),
            cost_denominator: 2,
            approval_density: 0.5,
            budget: BudgetRule::Uniform {
                min: Rational::new(projects as i64, 2),
                max: Rational::from_integer(2 * projects as i64),
                denominator: 2,
            },
        }
    }

    pub fn unit_cost(voters: usize, projects: usize, budget: i64) -> Self {
        GeneratorParams {
            voters,
            projects,
            cost_min: Rational::one(),
            cost_max: Rational::one(),
            cost_denominator: 1,
            approval_density: 0.5,
            budget: BudgetRule::Fixed(Rational::from_integer(budget)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GenerateError {
    #[error("need at least one voter and one project")]
    Empty,
    #[error("cost range [{min}, {max}] contains no positive value on the 1/{denominator} grid")]
    EmptyCostRange { min: Money, max: Money, denominator: u32 },
    #[error("budget range contains no positive value")]
    EmptyBudgetRange,
    #[error("approval density {0} must lie in (0, 1]")]
    Density(f64),
}

/// Integer numerators `k` with `min <= k/den <= max` and `k/den > 0`.
fn grid(min: &Money, max: &Money, den: u32) -> Option<(i64, i64)> {
    if den == 0 {
        return None;
    }
    let d = Rational::from_integer(den as i64);
    let lo = (min * &d).ceil().max(BigInt::from(1));
    let hi = (max * &d).floor();
    if lo > hi {
        return None;
    }
    Some((i64::try_from(lo).ok()?, i64::try_from(hi).ok()?))
}

fn draw(rng: &mut ChaCha8Rng, (lo, hi): (i64, i64), den: u32) -> Money {
    Rational::new(rng.gen_range(lo..=hi), den as i64)
}

/// Builds a random instance, deterministic for a given `seed`.
///
/// Project ids are `p1..pm`. Every voter approves at least one project;
/// ballots that come out empty are redrawn.
pub fn generate_random(params: &GeneratorParams, seed: u64) -> Result<Instance, GenerateError> {
    if params.voters == 0 || params.projects == 0 {
        return Err(GenerateError::Empty);
    }
    let density = params.approval_density;
    if !(density > 0.0 && density <= 1.0) {
        return Err(GenerateError::Density(density));
    }
    let cost_grid = grid(&params.cost_min, &params.cost_max, params.cost_denominator).ok_or_else(|| {
        GenerateError::EmptyCostRange {
            min: params.cost_min.clone(),
            max: params.cost_max.clone(),
            denominator: params.cost_denominator,
        }
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let projects: Vec<Project> = (1..=params.projects)
        .map(|i| Project::new(format!("p{i}"), draw(&mut rng, cost_grid, params.cost_denominator)))
        .collect();
    let approvals: Vec<ProjectSet> = (0..params.voters)
        .map(|_| loop {
            let ballot: ProjectSet = (0..params.projects).filter(|_| rng.gen_bool(density)).collect();
            if !ballot.is_empty() {
                break ballot;
            }
        })
        .collect();
    let budget = match &params.budget {
        BudgetRule::Fixed(b) => b.clone(),
        BudgetRule::Uniform { min, max, denominator } => {
            let g = grid(min, max, *denominator).ok_or(GenerateError::EmptyBudgetRange)?;
            draw(&mut rng, g, *denominator)
        }
        BudgetRule::FractionOfTotal(frac) => {
            let total: Money = projects.iter().map(|p| &p.cost).sum();
            total * frac
        }
    };
    if !budget.is_positive() {
        return Err(GenerateError::EmptyBudgetRange);
    }
    Ok(Instance::new(projects, approvals, budget).expect("generator output satisfies invariants"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let params = GeneratorParams::small(4, 6);
        assert_eq!(generate_random(&params, 11).unwrap(), generate_random(&params, 11).unwrap());
        assert_ne!(generate_random(&params, 11).unwrap(), generate_random(&params, 12).unwrap());
    }

    #[test]
    fn full_density_approves_everything() {
        let params = GeneratorParams { approval_density: 1.0, ..GeneratorParams::small(3, 5) };
        let inst = generate_random(&params, 3).unwrap();
        assert!(inst.ballots().iter().all(|b| b.len() == 5));
    }

    #[test]
    fn seed_seven_small_instance_is_valid() {
        let params = GeneratorParams {
            cost_min: Rational::from_integer(1),
            cost_max: Rational::from_integer(4),
            cost_denominator: 1,
            ..GeneratorParams::small(3, 5)
        };
        let inst = generate_random(&params, 7).unwrap();
        assert_eq!((inst.num_voters(), inst.num_projects()), (3, 5));
        for p in 0..5 {
            let c = inst.cost(p);
            assert!(c.is_integer() && *c >= Rational::one() && *c <= Rational::from_integer(4));
        }
        assert!(inst.ballots().iter().all(|b| !b.is_empty()));
        assert!(inst.budget().is_positive());
    }

    #[test]
    fn invariants_hold_over_many_seeds() {
        let params = GeneratorParams::small(5, 7);
        for seed in 0..1000 {
            let inst = generate_random(&params, seed).unwrap();
            assert!(inst.ballots().iter().all(|b| !b.is_empty()));
            for p in inst.projects() {
                assert!(p.cost >= Rational::one() && p.cost <= Rational::from_integer(5));
            }
            assert!(*inst.budget() >= Rational::new(7, 2) && *inst.budget() <= Rational::from_integer(14));
        }
    }

    #[test]
    fn rejects_bad_params() {
        let empty_costs = GeneratorParams {
            cost_min: Rational::from_integer(3),
            cost_max: Rational::from_integer(2),
            ..GeneratorParams::small(2, 2)
        };
        assert!(matches!(generate_random(&empty_costs, 0), Err(GenerateError::EmptyCostRange { .. })));
        let nonpositive = GeneratorParams {
            cost_min: Rational::from_integer(-2),
            cost_max: Rational::from_integer(0),
            ..GeneratorParams::small(2, 2)
        };
        assert!(matches!(generate_random(&nonpositive, 0), Err(GenerateError::EmptyCostRange { .. })));
        let zero_density = GeneratorParams { approval_density: 0.0, ..GeneratorParams::small(2, 2) };
        assert!(matches!(generate_random(&zero_density, 0), Err(GenerateError::Density(_))));
        assert_eq!(generate_random(&GeneratorParams::small(0, 2), 0), Err(GenerateError::Empty));
    }
}
