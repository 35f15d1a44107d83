use std::sync::OnceLock;

const TABLE_MAX: usize = 170;

fn table() -> &'static [f64; TABLE_MAX + 1] {
    static TABLE: OnceLock<[f64; TABLE_MAX + 1]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [0.0; TABLE_MAX + 1];
        let mut prod = 1.0_f64;
        for (n, slot) in t.iter_mut().enumerate().skip(1) {
            prod *= n as f64;
            *slot = prod.ln();
        }
        t
    })
}

/// `ln(n!)`. Exact products up to 170!, Stirling series beyond.
pub fn log_factorial(n: usize) -> f64 {
    if n <= TABLE_MAX {
        return table()[n];
    }
    let x = n as f64;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    x * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI * x).ln()
        + inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 / 1260.0))
}
