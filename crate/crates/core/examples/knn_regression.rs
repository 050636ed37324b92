//! K-nearest-neighbour regression: averages the targets of the closest
//! training rows; ties keep the earlier row.

use energy_forecast::regressors::{KnnModel, KnnParams, Regressor};
use energy_forecast::SupervisedFrame;

fn main() -> energy_forecast::Result<()> {
    let frame = SupervisedFrame::from_rows(
        vec![vec![0.0], vec![1.0], vec![2.0], vec![10.0]],
        vec![0.0, 5.0, 10.0, 100.0],
    )?;
    let model = KnnModel::fit(&frame, &KnnParams { k: 3 })?;
    println!("neighbours of 1.0: {:?}", model.neighbours(&[1.0]));
    println!("prediction at 1.0: {}", model.predict(&[1.0]));

    let overfit = KnnModel::fit(&frame, &KnnParams { k: 5 });
    println!("K = 5 on 4 rows: {}", overfit.unwrap_err());
    Ok(())
}
