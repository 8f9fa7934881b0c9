use lcdt::measure::{integrate_weighted, QuadratureSpec, Signal};
use lcdt::special::DunklOrder;
use lcdt::Complex64;
fn main() {
    let quad = QuadratureSpec {
        radius: 30.0,
        panels: 2,
        nodes_per_panel: 8,
        rel_tol: 1e-10,
    };
    let wild = Signal::new("wild", 30.0, |x| Complex64::new((3.0e4 * x * x).cos(), 0.0));
    let r = integrate_weighted(&wild, DunklOrder::new(0.0).unwrap(), &quad);
    println!("{r:?}");
    // fresnel-type: ∫ |x| cos(3e4 x²)/2 dx = [sin(3e4 x²)/(2*3e4)]..., exact = sin(3e4*900)/6e4
    println!("true = {}", (3.0e4 * 900.0f64).sin() / (6.0e4));
}
