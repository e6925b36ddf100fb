//! Exhaustive breadth-first search over the Cayley graph of BS(1,n)
//! with respect to `{a, t}`. This is the ground truth every other module
//! is checked against.

use std::collections::HashMap;

use crate::group::{GroupElement, GroupError, GroupParams, Letter};

pub const DEFAULT_NODE_BUDGET: usize = 5_000_000;

/// The ball of a given radius around the identity, layer by layer.
#[derive(Debug, Clone)]
pub struct CayleyBall {
    params: GroupParams,
    distances: HashMap<GroupElement, u32>,
    layers: Vec<Vec<GroupElement>>,
}

impl CayleyBall {
    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn radius(&self) -> usize {
        self.layers.len().saturating_sub(1)
    }

    /// `|S_n(0)|, …, |S_n(radius)|`.
    pub fn sphere_sizes(&self) -> Vec<u64> {
        self.layers.iter().map(|l| l.len() as u64).collect()
    }

    pub fn sphere(&self, radius: usize) -> &[GroupElement] {
        self.layers.get(radius).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Word length of `g`, if it lies in the ball.
    pub fn distance(&self, g: &GroupElement) -> Option<u32> {
        self.distances.get(g).copied()
    }

    pub fn len(&self) -> usize {
        self.distances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.distances.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = (&GroupElement, u32)> {
        self.layers
            .iter()
            .enumerate()
            .flat_map(|(d, layer)| layer.iter().map(move |g| (g, d as u32)))
    }
}

struct Search {
    params: GroupParams,
    budget: usize,
    distances: HashMap<GroupElement, u32>,
    layers: Vec<Vec<GroupElement>>,
}

impl Search {
    fn new(params: GroupParams, budget: usize) -> Self {
        let id = GroupElement::identity();
        let mut distances = HashMap::new();
        distances.insert(id.clone(), 0);
        Search {
            params,
            budget,
            distances,
            layers: vec![vec![id]],
        }
    }

    /// Expands one more layer. Fails without touching `layers` if the budget runs out.
    fn expand(&mut self) -> Result<(), GroupError> {
        let radius = self.layers.len() as u32;
        let mut next = Vec::new();
        for g in self.layers.last().expect("at least the identity layer") {
            for letter in Letter::ALL {
                let h = g.mul_letter(letter, self.params);
                if self.distances.contains_key(&h) {
                    continue;
                }
                if self.distances.len() >= self.budget {
                    return Err(self.exceeded());
                }
                self.distances.insert(h.clone(), radius);
                next.push(h);
            }
        }
        self.layers.push(next);
        Ok(())
    }

    fn exceeded(&self) -> GroupError {
        GroupError::BudgetExceeded {
            budget: self.budget,
            completed_radius: self.layers.len() - 1,
            sphere_sizes: self.layers.iter().map(|l| l.len() as u64).collect(),
        }
    }
}

/// Enumerates the ball of the given radius.
pub fn bfs_spheres(params: GroupParams, radius: usize, budget: usize) -> Result<CayleyBall, GroupError> {
    let mut search = Search::new(params, budget);
    while search.layers.len() <= radius {
        search.expand()?;
    }
    Ok(CayleyBall {
        params,
        distances: search.distances,
        layers: search.layers,
    })
}

/// Exact word length of `g`, found by expanding layers until `g` appears.
pub fn bfs_distance(g: &GroupElement, params: GroupParams, budget: usize) -> Result<u32, GroupError> {
    let mut search = Search::new(params, budget);
    loop {
        if let Some(&d) = search.distances.get(g) {
            return Ok(d);
        }
        search.expand()?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32) -> GroupParams {
        GroupParams::new(n).unwrap()
    }

    #[test]
    fn small_spheres() {
        assert_eq!(bfs_spheres(p(2), 0, DEFAULT_NODE_BUDGET).unwrap().sphere_sizes(), vec![1]);
        assert_eq!(bfs_spheres(p(2), 1, DEFAULT_NODE_BUDGET).unwrap().sphere_sizes(), vec![1, 4]);
    }

    #[test]
    fn distances_of_small_elements() {
        let budget = DEFAULT_NODE_BUDGET;
        assert_eq!(bfs_distance(&GroupElement::identity(), p(2), budget).unwrap(), 0);
        let a = GroupElement::new(0, 1, 0, p(2)).unwrap();
        assert_eq!(bfs_distance(&a, p(2), budget).unwrap(), 1);
        let a8 = GroupElement::new(0, 8, 0, p(2)).unwrap();
        assert_eq!(bfs_distance(&a8, p(2), budget).unwrap(), 6);
    }

    #[test]
    fn budget_exhaustion_reports_progress() {
        match bfs_spheres(p(2), 10, 50) {
            Err(GroupError::BudgetExceeded {
                completed_radius,
                sphere_sizes,
                ..
            }) => {
                assert_eq!(sphere_sizes.len(), completed_radius + 1);
                assert_eq!(&sphere_sizes[..2], &[1, 4]);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
