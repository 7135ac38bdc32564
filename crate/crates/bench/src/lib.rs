//! Fixtures shared by the benchmarks.

use embcurve_core::exactla::q;
use embcurve_core::{embed, EmbeddedCurve, MarkedCurve, Point};

/// One line with a mark at each integer parameter.
pub fn line(params: &[i64]) -> MarkedCurve {
    MarkedCurve::new(1, vec![], params.iter().map(|&p| Point::new(0, q(p))).collect()).expect("distinct parameters")
}

pub fn embedded_line(params: &[i64], k: u32) -> EmbeddedCurve {
    embed(&line(params), k).expect("stable line")
}

/// Two lines meeting at one point, two more marks on each.
pub fn nodal_pair() -> MarkedCurve {
    line(&[0, 1, -1]).graft(1, &line(&[0, 2, -2])).expect("graft")
}
