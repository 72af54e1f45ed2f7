//! Inputs shared by the benchmarks.

use lipsat::poly::parse_polynomial;
use lipsat::{Ideal, MonomialOrder, Polynomial};

pub fn poly(text: &str, names: &[&str]) -> Polynomial {
    parse_polynomial(text, names, MonomialOrder::GrevLex).expect("benchmark polynomial")
}

/// Katsura-style system in four variables.
pub fn katsura4() -> Ideal {
    let v = ["a", "b", "c", "d"];
    let gens = [
        "a + 2*b + 2*c + 2*d - 1",
        "a^2 + 2*b^2 + 2*c^2 + 2*d^2 - a",
        "2*a*b + 2*b*c + 2*c*d - b",
        "b^2 + 2*a*c + 2*b*d - c",
    ];
    Ideal::from_generators(4, gens.iter().map(|g| poly(g, &v)).collect())
}
