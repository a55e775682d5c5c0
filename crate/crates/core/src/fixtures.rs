//! Named complexes shared by tests, benches and the command line.

use crate::constructions::{disjoint_union, Generator};
use crate::poset::{Complex, ComplexBuilder, Sign};
use crate::rewriting::cell_named;

pub fn point() -> Complex {
    Generator::Point.build().expect("point")
}

pub fn globe(n: usize) -> Complex {
    Generator::Globe(n).build().expect("globe")
}

pub fn path(k: usize) -> Complex {
    Generator::Path(k).build().expect("path")
}

pub fn atom2(n: usize, m: usize) -> Complex {
    Generator::Atom2(n, m).build().expect("2-atom")
}

pub fn cube(n: usize) -> Complex {
    Generator::Cube(n).build().expect("cube")
}

pub fn simplex(n: usize) -> Complex {
    Generator::Simplex(n).build().expect("simplex")
}

/// Two separate points `p`, `q`.
pub fn two_points() -> Complex {
    let mut b = ComplexBuilder::new();
    b.element("p", 0).element("q", 0);
    b.build().expect("two points")
}

/// `O²` with a pendant edge `f` leaving its output vertex.
pub fn whisk() -> Complex {
    let mut b = globe(2).to_builder();
    b.element("w", 0).element("f", 1);
    b.cover("f", "0+", Sign::Minus).cover("f", "w", Sign::Plus);
    b.build().expect("whisker")
}

/// A 2-cell whose input and output boundaries are each two disjoint edges.
///
/// Oriented thin, yet its boundaries are not 1-molecules.
pub fn nonex9() -> Complex {
    let mut b = ComplexBuilder::new();
    b.element("x", 2);
    for i in 1..=2 {
        for s in ["-", "+"] {
            b.element(format!("y{i}{s}"), 1)
                .element(format!("z{i}{s}"), 0);
        }
    }
    for i in 1..=2 {
        b.cover("x", format!("y{i}-"), Sign::Minus)
            .cover("x", format!("y{i}+"), Sign::Plus);
        for s in ["-", "+"] {
            b.cover(format!("y{i}{s}"), format!("z{i}-"), Sign::Minus);
            b.cover(format!("y{i}{s}"), format!("z{i}+"), Sign::Plus);
        }
    }
    b.build().expect("nonex9")
}

/// `O²` with the sign of its output face flipped; not oriented thin.
pub fn non_thin_disc() -> Complex {
    let mut b = ComplexBuilder::new();
    b.element("0-", 0)
        .element("0+", 0)
        .element("1-", 1)
        .element("1+", 1)
        .element("2", 2);
    for e in ["1-", "1+"] {
        b.cover(e, "0-", Sign::Minus).cover(e, "0+", Sign::Plus);
    }
    b.cover("2", "1-", Sign::Minus)
        .cover("2", "1+", Sign::Minus);
    b.build().expect("non-thin disc")
}

fn edges(b: &mut ComplexBuilder, list: &[(&str, &str, &str)]) {
    for &(e, from, to) in list {
        b.element(e, 1)
            .cover(e, from, Sign::Minus)
            .cover(e, to, Sign::Plus);
    }
}

fn face(b: &mut ComplexBuilder, name: &str, inputs: &[&str], outputs: &[&str]) {
    b.element(name, 2);
    for &e in inputs {
        b.cover(name, e, Sign::Minus);
    }
    for &e in outputs {
        b.cover(name, e, Sign::Plus);
    }
}

/// Two 2-cells glued along a 2-edge path; merging the path then the faces gives `A(2,2)`.
pub fn merger_example() -> Complex {
    let mut b = ComplexBuilder::new();
    for v in ["a", "b", "c", "d", "m"] {
        b.element(v, 0);
    }
    edges(
        &mut b,
        &[
            ("ab", "a", "b"),
            ("ac", "a", "c"),
            ("cm", "c", "m"),
            ("mb", "m", "b"),
            ("bd", "b", "d"),
            ("cd", "c", "d"),
        ],
    );
    face(&mut b, "x1", &["ab"], &["ac", "cm", "mb"]);
    face(&mut b, "x2", &["cm", "mb", "bd"], &["cd"]);
    b.build().expect("merger example")
}

/// A 2-molecule of three cells admitting exactly two merger trees.
pub fn three_cell_diagram() -> Complex {
    let mut b = ComplexBuilder::new();
    for v in ["s", "t", "i1", "o1", "o2", "o3"] {
        b.element(v, 0);
    }
    edges(
        &mut b,
        &[
            ("si", "s", "i1"),
            ("it", "i1", "t"),
            ("io", "i1", "o1"),
            ("so", "s", "o1"),
            ("o12", "o1", "o2"),
            ("u", "o2", "o3"),
            ("l", "o2", "o3"),
            ("o3t", "o3", "t"),
        ],
    );
    face(&mut b, "x1", &["si", "io"], &["so"]);
    face(&mut b, "x2", &["it"], &["io", "o12", "l", "o3t"]);
    face(&mut b, "x3", &["l"], &["u"]);
    b.build().expect("three-cell diagram")
}

fn square_with_diagonal(
    faces: &[(&str, &[&str], &[&str])],
    diagonal: (&str, &str, &str),
) -> Complex {
    let mut b = ComplexBuilder::new();
    for v in ["a", "x1", "x2", "d"] {
        b.element(v, 0);
    }
    edges(
        &mut b,
        &[
            ("ab", "a", "x2"),
            ("bd", "x2", "d"),
            ("ac", "a", "x1"),
            ("cd", "x1", "d"),
            diagonal,
        ],
    );
    for &(name, i, o) in faces {
        face(&mut b, name, i, o);
    }
    b.build().expect("square with diagonal")
}

/// Input boundary of `pw3`: two triangles meeting along `y1: x1 → x2`.
pub fn pw3_input() -> Complex {
    square_with_diagonal(
        &[
            ("f1", &["ab"], &["ac", "y1"]),
            ("f2", &["y1", "bd"], &["cd"]),
        ],
        ("y1", "x1", "x2"),
    )
}

/// Output boundary of `pw3`: two triangles meeting along `y2: x2 → x1`.
pub fn pw3_output() -> Complex {
    square_with_diagonal(
        &[
            ("g1", &["ab", "y2"], &["ac"]),
            ("g2", &["bd"], &["y2", "cd"]),
        ],
        ("y2", "x2", "x1"),
    )
}

/// A 3-atom whose Hasse graph has the loop `x1 → y1 → x2 → y2 → x1`.
pub fn pw3() -> Complex {
    cell_named(&pw3_input(), &pw3_output(), "u").expect("pw3")
}

/// A named complex with the facts the test suites rely on.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub complex: Complex,
    /// Constructible directed complex.
    pub cdc: bool,
    /// The whole complex is a constructible molecule.
    pub molecule: bool,
}

fn fixture(name: &str, complex: Complex, cdc: bool, molecule: bool) -> Fixture {
    Fixture {
        name: name.to_string(),
        complex,
        cdc,
        molecule,
    }
}

/// The shared test corpus.
pub fn corpus() -> Vec<Fixture> {
    let mut out = vec![fixture("1", point(), true, true)];
    for n in 1..=3 {
        out.push(fixture(&format!("O{n}"), globe(n), true, true));
    }
    for n in 2..=3 {
        out.push(fixture(&format!("K{n}"), cube(n), true, true));
        out.push(fixture(&format!("D{n}"), simplex(n), true, true));
    }
    for k in 2..=3 {
        out.push(fixture(&format!("PATH{k}"), path(k), true, true));
    }
    out.push(fixture("A21", atom2(2, 1), true, true));
    out.push(fixture("A13", atom2(1, 3), true, true));
    out.push(fixture("MERGER", merger_example(), true, true));
    out.push(fixture("TREE3", three_cell_diagram(), true, true));
    out.push(fixture("PW3", pw3(), true, true));
    out.push(fixture("PW3-", pw3_input(), true, true));
    out.push(fixture("PW3+", pw3_output(), true, true));
    out.push(fixture("WHISK", whisk(), true, false));
    out.push(fixture("1+1", two_points(), true, false));
    out.push(fixture("NONEX9", nonex9(), false, false));
    out
}

/// Looks up a fixture by name.
pub fn by_name(name: &str) -> Option<Complex> {
    let upper = name.to_ascii_uppercase();
    corpus()
        .into_iter()
        .find(|f| f.name == upper)
        .map(|f| f.complex)
        .or_else(|| match upper.as_str() {
            "O0" | "POINT" => Some(point()),
            "1+1'" => disjoint_union(&point(), &point()).ok(),
            _ => None,
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::molecules::{is_constructible_directed_complex, is_constructible_molecule};

    #[test]
    fn sizes() {
        assert_eq!(nonex9().len(), 9);
        assert_eq!(merger_example().len(), 13);
        assert_eq!(three_cell_diagram().len(), 17);
        assert_eq!(pw3().len(), 15);
        assert_eq!(whisk().len(), 7);
    }

    #[test]
    fn corpus_flags_hold() {
        for f in corpus() {
            let c = &f.complex;
            assert_eq!(
                is_constructible_directed_complex(c).unwrap(),
                f.cdc,
                "{}",
                f.name
            );
            if f.cdc {
                assert_eq!(
                    is_constructible_molecule(c, &c.all()).unwrap(),
                    f.molecule,
                    "{}",
                    f.name
                );
            }
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(by_name("pw3").unwrap().len(), 15);
        assert!(by_name("nope").is_none());
    }
}
