//! Classical triangulations used as a test corpus.

use super::Complex;
use crate::{Error, Result};

pub const CATALOG_NAMES: &[&str] = &[
    "circle(n)",
    "sphere2",
    "torus7",
    "rp2_6",
    "klein8",
    "simplex(n)",
    "sphere(n)",
];

/// Looks up a named triangulation.
///
/// * `circle(n)`: the n-gon, n ≥ 3
/// * `sphere2`: boundary of the octahedron
/// * `torus7`: the 7-vertex Möbius torus
/// * `rp2_6`: the 6-vertex projective plane (hemi-icosahedron)
/// * `klein8`: an 8-vertex Klein bottle
/// * `simplex(n)`: the full n-simplex on vertices 0..=n
/// * `sphere(n)`: the boundary of the (n+1)-simplex
pub fn catalog(name: &str) -> Result<Complex> {
    let name = name.trim();
    let unknown = || Error::UnknownCatalog {
        name: name.to_string(),
        available: CATALOG_NAMES.join(", "),
    };
    if let Some((family, n)) = parse_family(name) {
        return match family {
            "circle" if n >= 3 => circle(n),
            "simplex" => simplex(n),
            "sphere" if n >= 1 => sphere(n),
            _ => Err(unknown()),
        };
    }
    match name {
        "sphere2" => octahedron(),
        "torus7" => torus7(),
        "rp2_6" => rp2_6(),
        "klein8" => klein8(),
        _ => Err(unknown()),
    }
}

fn parse_family(name: &str) -> Option<(&str, u32)> {
    let open = name.find('(')?;
    let inner = name[open + 1..].strip_suffix(')')?;
    let n = inner.trim().parse().ok()?;
    Some((name[..open].trim(), n))
}

fn circle(n: u32) -> Result<Complex> {
    Complex::closure((0..n).map(|i| [i, (i + 1) % n]))
}

fn simplex(n: u32) -> Result<Complex> {
    Complex::closure([(0..=n).collect::<Vec<u32>>()])
}

fn sphere(n: u32) -> Result<Complex> {
    Complex::closure((0..=n + 1).map(|skip| (0..=n + 1).filter(|&v| v != skip).collect::<Vec<u32>>()))
}

fn octahedron() -> Result<Complex> {
    // poles 0/5, equator 1-2-3-4
    let mut tris = Vec::new();
    for i in 0..4 {
        let (a, b) = (1 + i, 1 + (i + 1) % 4);
        tris.push([0, a, b]);
        tris.push([5, a, b]);
    }
    Complex::closure(tris)
}

fn torus7() -> Result<Complex> {
    Complex::closure((0..7u32).flat_map(|i| [[i, (i + 1) % 7, (i + 3) % 7], [i, (i + 2) % 7, (i + 3) % 7]]))
}

fn rp2_6() -> Result<Complex> {
    Complex::closure([
        [0u32, 1, 3],
        [0, 1, 5],
        [0, 2, 3],
        [0, 2, 4],
        [0, 4, 5],
        [1, 2, 4],
        [1, 2, 5],
        [1, 3, 4],
        [2, 3, 5],
        [3, 4, 5],
    ])
}

fn klein8() -> Result<Complex> {
    Complex::closure([
        [0u32, 1, 4],
        [0, 1, 5],
        [0, 2, 3],
        [0, 2, 7],
        [0, 3, 4],
        [0, 5, 6],
        [0, 6, 7],
        [1, 2, 4],
        [1, 2, 7],
        [1, 5, 7],
        [2, 3, 6],
        [2, 4, 6],
        [3, 4, 5],
        [3, 5, 7],
        [3, 6, 7],
        [4, 5, 6],
    ])
}
