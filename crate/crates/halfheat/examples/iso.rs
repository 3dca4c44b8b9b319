use halfheat::catalog;
use halfheat::density::{self, DensityConfig};

fn main() {
    let cat = catalog::catenoid();
    let hi = DensityConfig { polar_order: 20, azimuth_order: 256, ..DensityConfig::default() };
    let radii: Vec<f64> = (0..8).map(|k| 0.35 * (1.0f64/0.35).powf(k as f64 / 7.0)).collect();
    let prof = density::profile(&cat, (0.0, 0.0), &radii, &hi).unwrap();
    for row in &prof.rows {
        println!("r = {:.4}  dev = {:.4e}  est = {:.1e}  ratio dev/est = {:.1}", row.r, (row.sigma - 0.5).abs(), row.err, (row.sigma - 0.5).abs() / row.err);
    }
    let fit = density::expansion_fit(&prof);
    println!("order {:.4} coeff {:.4e} residual {:.2e} conclusive {}", fit.leading_order, fit.leading_coeff, fit.residual, fit.conclusive);
}
