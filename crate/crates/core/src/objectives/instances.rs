use super::frechet::{frechet_objective, FrechetMeanProblem, FrechetObjective};
use crate::error::{Error, Result};
use crate::geometry::{
    rng_from_seed, sample_in_ball, sample_point, sample_unit_tangent, GeodesicBall, Manifold, Point,
};

/// Recipe for a seeded Fréchet-mean test problem.
///
/// Anchors are drawn in `B(center, spread·radius)` around a random center,
/// the feasible set is `B(center, radius)` and the constants hold on
/// `B(center, 5·radius)`, which contains every point within `2·diam` of the
/// feasible set. With `kappa` set, a hyperplane through the center raises the
/// condition number to exactly `kappa`, and the start point gets components
/// along both the stiff normal and a flat direction.
///
/// Explicit `anchors` replace the random draw; the center is then `center`,
/// or the manifold origin when that is unset too.
#[derive(Clone, Debug, PartialEq)]
pub struct FrechetInstanceSpec {
    pub seed: u64,
    pub num_anchors: usize,
    pub spread: f64,
    pub radius: f64,
    pub weights: Option<Vec<f64>>,
    pub kappa: Option<f64>,
    pub anchors: Option<Vec<Point>>,
    pub center: Option<Point>,
}

impl Default for FrechetInstanceSpec {
    fn default() -> Self {
        FrechetInstanceSpec {
            seed: 0,
            num_anchors: 5,
            spread: 0.8,
            radius: 0.5,
            weights: None,
            kappa: None,
            anchors: None,
            center: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FrechetInstance {
    pub objective: FrechetObjective,
    pub ball: GeodesicBall,
    pub x0: Point,
}

impl FrechetInstanceSpec {
    pub fn build(&self, m: &Manifold) -> Result<FrechetInstance> {
        if self.anchors.is_none() && self.num_anchors == 0 {
            return Err(Error::invalid("at least one anchor is needed"));
        }
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(Error::invalid(format!(
                "radius must be positive, got {}",
                self.radius
            )));
        }
        if !(0.0..=1.0).contains(&self.spread) {
            return Err(Error::invalid(format!(
                "spread must lie in [0, 1], got {}",
                self.spread
            )));
        }
        let mut rng = rng_from_seed(self.seed);
        let center = match (&self.center, &self.anchors) {
            (Some(c), _) => {
                m.check_point(c)?;
                c.clone()
            }
            (None, Some(_)) => m.origin(),
            (None, None) => sample_point(m, &mut rng, 0.3),
        };
        let anchors: Vec<Point> = match &self.anchors {
            Some(given) if given.is_empty() => {
                return Err(Error::invalid("at least one anchor is needed"))
            }
            Some(given) => {
                for a in given {
                    m.check_point(a)?;
                }
                given.clone()
            }
            None => (0..self.num_anchors)
                .map(|_| sample_in_ball(m, &center, self.spread * self.radius, &mut rng))
                .collect(),
        };
        let problem = match &self.weights {
            Some(w) if w.len() != anchors.len() => {
                return Err(Error::invalid(format!(
                    "{} weights given for {} anchors",
                    w.len(),
                    anchors.len()
                )))
            }
            Some(w) if w.iter().any(|v| !(*v > 0.0 && v.is_finite())) => {
                return Err(Error::invalid("weights must be positive and finite"))
            }
            Some(w) => FrechetMeanProblem::new(anchors, w.clone()),
            None => FrechetMeanProblem::uniform(anchors),
        };
        let domain = GeodesicBall::new(center.clone(), 5.0 * self.radius)?;
        let ball = GeodesicBall::new(center.clone(), self.radius)?;
        match self.kappa {
            None => {
                let objective = frechet_objective(m, problem, domain)?;
                let x0 = sample_in_ball(m, &center, self.radius, &mut rng);
                Ok(FrechetInstance {
                    objective,
                    ball,
                    x0,
                })
            }
            Some(kappa) => {
                let normal = sample_unit_tangent(m, &center, &mut rng);
                let objective = FrechetObjective::with_condition_number(
                    m,
                    problem,
                    center.clone(),
                    &normal,
                    domain,
                    kappa,
                )?;
                let side = sample_unit_tangent(m, &center, &mut rng);
                let flat = side.axpy(-m.inner(&center, &side, &normal)?, &normal)?;
                let flat = if m.norm(&flat) > 1e-8 {
                    flat.scale(1.0 / m.norm(&flat))
                } else {
                    flat
                };
                let dir = normal.add(&flat)?;
                let x0 = m.exp(&center, &dir.scale(0.7 * self.radius / m.norm(&dir)))?;
                Ok(FrechetInstance {
                    objective,
                    ball,
                    x0,
                })
            }
        }
    }
}
