use serde::{Deserialize, Serialize};

use super::{squared_distance, Regressor};
use crate::error::{Error, Result};
use crate::transform::SupervisedFrame;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnnParams {
    pub k: usize,
}

impl Default for KnnParams {
    fn default() -> Self {
        Self { k: 3 }
    }
}

/// K-nearest-neighbour regression under Euclidean distance.
///
/// Equal distances keep the earlier training row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnnModel {
    pub k: usize,
    pub inputs: Vec<Vec<f64>>,
    pub targets: Vec<f64>,
}

impl KnnModel {
    pub fn fit(frame: &SupervisedFrame, params: &KnnParams) -> Result<Self> {
        if params.k == 0 {
            return Err(Error::InvalidArgument("K must be at least 1".into()));
        }
        if params.k > frame.n_samples() {
            return Err(Error::KTooLarge { k: params.k, samples: frame.n_samples() });
        }
        Ok(Self { k: params.k, inputs: frame.x.clone(), targets: frame.y.clone() })
    }

    /// Indices of the `k` nearest training rows, nearest first.
    pub fn neighbours(&self, x: &[f64]) -> Vec<usize> {
        let mut ranked: Vec<(f64, usize)> = self
            .inputs
            .iter()
            .enumerate()
            .map(|(i, row)| (squared_distance(row, x), i))
            .collect();
        // (distance, index) order breaks ties by training position.
        ranked.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        ranked.into_iter().take(self.k).map(|(_, i)| i).collect()
    }
}

impl Regressor for KnnModel {
    fn name(&self) -> &'static str {
        "knn"
    }

    fn predict(&self, x: &[f64]) -> f64 {
        let idx = self.neighbours(x);
        idx.iter().map(|&i| self.targets[i]).sum::<f64>() / idx.len() as f64
    }

    fn parameters(&self) -> Vec<f64> {
        let mut out = vec![self.k as f64];
        out.extend(self.inputs.iter().flatten());
        out.extend(&self.targets);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(k: usize) -> KnnModel {
        let f = SupervisedFrame::from_rows(vec![vec![0.0], vec![1.0], vec![2.0]], vec![0.0, 10.0, 20.0])
            .unwrap();
        KnnModel::fit(&f, &KnnParams { k }).unwrap()
    }

    #[test]
    fn toy_ranking() {
        assert_eq!(model(2).predict(&[0.6]), 5.0);
    }

    #[test]
    fn exact_match_and_full_neighbourhood() {
        assert_eq!(model(1).predict(&[2.0]), 20.0);
        assert_eq!(model(3).predict(&[100.0]), 10.0);
    }

    #[test]
    fn ties_keep_earlier_index() {
        // 0.5 is equidistant from rows 0 and 1.
        assert_eq!(model(1).neighbours(&[0.5]), vec![0]);
        assert_eq!(model(1).predict(&[1.5]), 10.0);
    }

    #[test]
    fn k_too_large() {
        let f = SupervisedFrame::from_rows(vec![vec![0.0]], vec![1.0]).unwrap();
        assert!(matches!(KnnModel::fit(&f, &KnnParams { k: 2 }), Err(Error::KTooLarge { .. })));
        assert!(KnnModel::fit(&f, &KnnParams { k: 0 }).is_err());
    }
}
