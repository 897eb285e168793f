use std::time::Instant;
use spatgof::geometry::{alpha_filtration, delaunay, Window};
use spatgof::homology::{betti_curve, persistence};
use spatgof::models::{sample_binomial, RngStream};
use spatgof::study::SummaryComputer;
use spatgof::summaries::SummaryId;

fn main() {
    let window = Window::square_with_area(6.0).unwrap();
    let patterns: Vec<_> = (0..100).map(|i| sample_binomial(300, &window, RngStream::new(1, i))).collect();
    let computer = SummaryComputer::default();
    let grid = SummaryId::Beta1.default_grid();

    let t = Instant::now();
    let tris: Vec<_> = patterns.iter().map(|p| delaunay(p).unwrap()).collect();
    println!("delaunay       {:>8.2} us/pattern", t.elapsed().as_micros() as f64 / 100.0);

    let t = Instant::now();
    let filts: Vec<_> = tris.iter().map(alpha_filtration).collect();
    println!("alpha          {:>8.2} us/pattern", t.elapsed().as_micros() as f64 / 100.0);

    let t = Instant::now();
    let diags: Vec<_> = filts.iter().map(persistence).collect();
    println!("persistence    {:>8.2} us/pattern", t.elapsed().as_micros() as f64 / 100.0);

    let t = Instant::now();
    for d in &diags { betti_curve(d, 0, &grid); betti_curve(d, 1, &grid); }
    println!("betti x2       {:>8.2} us/pattern", t.elapsed().as_micros() as f64 / 100.0);

    for stat in [SummaryId::K, SummaryId::Pcf, SummaryId::G, SummaryId::F] {
        let t = Instant::now();
        for p in &patterns { computer.compute(p, &[stat]).unwrap(); }
        println!("{:<14} {:>8.2} us/pattern", stat.name(), t.elapsed().as_micros() as f64 / 100.0);
    }
}
