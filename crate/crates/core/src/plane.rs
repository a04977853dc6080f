//! The affine plane A(2,q) carried by GF(q²): parallel-class slopes, indexed
//! lines, the orthogonal arrays those parallel classes define, and the
//! canonical clique partitions cut out by the quadratic slopes.
//!
//! Line indices follow one convention everywhere: the line through 0 of each
//! parallel class has index 0; for slope 1 the line of index j is
//! {c + j·α | c ∈ GF(q)}, and for slope i+α it is {j + c·(i+α) | c ∈ GF(q)}.
//! In closed form the index of the line through x+y·α is y (slope 1) or
//! x − i·y (slope i+α).

use crate::gf::{ExtElement, ExtField, FieldElement};
use std::fmt;

/// Which of the q+1 parallel classes a slope representative generates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SlopeKind {
    /// The slope 1: lines parallel to the embedded base field.
    Unit,
    /// The slope i + α for a base-field shift i.
    Shifted(FieldElement),
}

/// A parallel-class representative, either 1 or i+α, with its square class.
#[derive(Debug, Clone)]
pub struct Slope {
    rep: ExtElement,
    kind: SlopeKind,
    quadratic: bool,
}

impl Slope {
    pub fn rep(&self) -> &ExtElement {
        &self.rep
    }

    pub fn kind(&self) -> &SlopeKind {
        &self.kind
    }

    pub fn is_quadratic(&self) -> bool {
        self.quadratic
    }

    pub fn notation(&self, e: &ExtField) -> String {
        e.element_string(&self.rep)
    }
}

/// All q+1 slopes: 1 first, then i+α for i in canonical index order.
pub fn all_slopes(e: &ExtField) -> Vec<Slope> {
    let mut slopes = Vec::with_capacity(e.q() as usize + 1);
    let one = e.one();
    slopes.push(Slope {
        quadratic: e.is_square(&one).expect("1 is nonzero"),
        rep: one,
        kind: SlopeKind::Unit,
    });
    for i in 0..e.q() {
        let shift = e.base().element(i);
        let rep = ExtElement::new(shift.clone(), e.base().one());
        let quadratic = e.is_square(&rep).expect("i+alpha is nonzero");
        slopes.push(Slope {
            rep,
            kind: SlopeKind::Shifted(shift),
            quadratic,
        });
    }
    slopes
}

/// Index of the line of slope `s` through the point `v` (closed form).
pub fn line_index_of(v: &ExtElement, s: &Slope, e: &ExtField) -> FieldElement {
    match s.kind() {
        SlopeKind::Unit => v.y().clone(),
        SlopeKind::Shifted(i) => e.base().sub(v.x(), &e.base().mul(i, v.y())),
    }
}

/// One line of the plane: a slope, a parallel-class index, and its q points.
#[derive(Debug, Clone)]
pub struct AffineLine {
    slope: Slope,
    index: FieldElement,
    points: Vec<ExtElement>,
}

impl AffineLine {
    pub fn slope(&self) -> &Slope {
        &self.slope
    }

    pub fn index(&self) -> &FieldElement {
        &self.index
    }

    pub fn points(&self) -> &[ExtElement] {
        &self.points
    }

    /// The points as sorted canonical vertex indices.
    pub fn vertex_indices(&self, e: &ExtField) -> Vec<usize> {
        let mut idx: Vec<usize> = self.points.iter().map(|p| e.index(p) as usize).collect();
        idx.sort_unstable();
        idx
    }
}

/// Constructs the line of the given slope and index from its definition.
pub fn line(s: &Slope, index: &FieldElement, e: &ExtField) -> AffineLine {
    let f = e.base();
    let points = match s.kind() {
        SlopeKind::Unit => f
            .elements()
            .into_iter()
            .map(|c| ExtElement::new(c, index.clone()))
            .collect(),
        SlopeKind::Shifted(i) => f
            .elements()
            .into_iter()
            .map(|c| ExtElement::new(f.add(index, &f.mul(&c, i)), c))
            .collect(),
    };
    AffineLine {
        slope: s.clone(),
        index: index.clone(),
        points,
    }
}

/// An m × n² array over {0..n−1}; rows are labeled by the slope they encode
/// and columns by the field element they index.
#[derive(Debug, Clone)]
pub struct OrthogonalArray {
    n: u32,
    rows: Vec<Vec<u32>>,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
}

impl OrthogonalArray {
    pub fn from_rows(
        n: u32,
        rows: Vec<Vec<u32>>,
        row_labels: Vec<String>,
        col_labels: Vec<String>,
    ) -> Self {
        let cols = (n as usize) * (n as usize);
        assert!(
            rows.iter().all(|r| r.len() == cols),
            "rows must have n² entries"
        );
        assert!(
            rows.iter().flatten().all(|&s| s < n),
            "symbols must lie in 0..n"
        );
        assert_eq!(row_labels.len(), rows.len());
        assert_eq!(col_labels.len(), cols);
        OrthogonalArray {
            n,
            rows,
            row_labels,
            col_labels,
        }
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }
}

/// A located failure of the orthogonal-array property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OaViolation {
    RowImbalance {
        row: usize,
        symbol: u32,
        count: usize,
    },
    PairDefect {
        row_a: usize,
        row_b: usize,
        pair: (u32, u32),
        count: usize,
    },
}

impl fmt::Display for OaViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OaViolation::RowImbalance { row, symbol, count } => write!(
                f,
                "row {row}: symbol {symbol} occurs {count} times instead of n"
            ),
            OaViolation::PairDefect {
                row_a,
                row_b,
                pair,
                count,
            } => write!(
                f,
                "rows ({row_a},{row_b}): pair ({},{}) occurs {count} times instead of once",
                pair.0, pair.1
            ),
        }
    }
}

/// Checks row balance and the all-pairs property for every row pair.
pub fn validate_oa(a: &OrthogonalArray) -> Result<(), OaViolation> {
    let n = a.n() as usize;
    for (r, row) in a.rows().iter().enumerate() {
        let mut counts = vec![0usize; n];
        for &s in row {
            counts[s as usize] += 1;
        }
        for (symbol, &count) in counts.iter().enumerate() {
            if count != n {
                return Err(OaViolation::RowImbalance {
                    row: r,
                    symbol: symbol as u32,
                    count,
                });
            }
        }
    }
    for ra in 0..a.m() {
        for rb in ra + 1..a.m() {
            let mut seen = vec![0usize; n * n];
            for c in 0..n * n {
                let pair = a.rows()[ra][c] as usize * n + a.rows()[rb][c] as usize;
                seen[pair] += 1;
            }
            for (pair, &count) in seen.iter().enumerate() {
                if count != 1 {
                    return Err(OaViolation::PairDefect {
                        row_a: ra,
                        row_b: rb,
                        pair: ((pair / n) as u32, (pair % n) as u32),
                        count,
                    });
                }
            }
        }
    }
    Ok(())
}

/// The (q+1) × q² array of line indices, one row per slope, columns in
/// canonical vertex order.
pub fn build_oa_full(e: &ExtField) -> OrthogonalArray {
    let slopes = all_slopes(e);
    let elems = e.enumerate_elements();
    let col_labels: Vec<String> = elems.iter().map(|v| e.element_string(v)).collect();
    let mut rows = Vec::with_capacity(slopes.len());
    let mut row_labels = Vec::with_capacity(slopes.len());
    for s in &slopes {
        rows.push(
            elems
                .iter()
                .map(|v| e.base().index(&line_index_of(v, s, e)) as u32)
                .collect(),
        );
        row_labels.push(s.notation(e));
    }
    OrthogonalArray::from_rows(e.q() as u32, rows, row_labels, col_labels)
}

/// The (q+1)/2 quadratic-slope rows of the full array, in the same order.
pub fn build_oa_quadratic(e: &ExtField) -> OrthogonalArray {
    let slopes = all_slopes(e);
    let full = build_oa_full(e);
    let mut rows = Vec::new();
    let mut row_labels = Vec::new();
    for (slope, (row, label)) in slopes
        .iter()
        .zip(full.rows.iter().zip(full.row_labels.iter()))
    {
        if slope.is_quadratic() {
            rows.push(row.clone());
            row_labels.push(label.clone());
        }
    }
    OrthogonalArray::from_rows(e.q() as u32, rows, row_labels, full.col_labels)
}

/// The q parallel lines of one quadratic slope, as sorted vertex-index sets
/// ordered by line index (the line through 0 first).
#[derive(Debug, Clone)]
pub struct CliquePartition {
    slope: Slope,
    slope_name: String,
    cliques: Vec<Vec<usize>>,
    n_vertices: usize,
}

impl CliquePartition {
    pub fn slope(&self) -> &Slope {
        &self.slope
    }

    pub fn slope_name(&self) -> &str {
        &self.slope_name
    }

    pub fn cliques(&self) -> &[Vec<usize>] {
        &self.cliques
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }
}

/// One partition per quadratic slope; q cliques of size q each.
pub fn canonical_partitions(e: &ExtField) -> Vec<CliquePartition> {
    let n = e.order() as usize;
    all_slopes(e)
        .into_iter()
        .filter(|s| s.is_quadratic())
        .map(|s| {
            let cliques = (0..e.q())
                .map(|j| line(&s, &e.base().element(j), e).vertex_indices(e))
                .collect();
            CliquePartition {
                slope_name: s.notation(e),
                slope: s,
                cliques,
                n_vertices: n,
            }
        })
        .collect()
}

/// Whether a vertex set is exactly an affine line with a square slope.
///
/// The slope is recovered from the two smallest points and the full point set
/// is reconstructed and compared; any mismatch yields `false`. The square
/// class is well defined because rescaling a direction by c ∈ GF(q)* never
/// changes it.
pub fn is_quadratic_line(set: &[usize], e: &ExtField) -> bool {
    let q = e.q() as usize;
    let order = e.order() as usize;
    let mut pts: Vec<usize> = set.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() != q || pts.len() != set.len() || pts.iter().any(|&v| v >= order) {
        return false;
    }
    let a = e.element(pts[0] as u64);
    let b = e.element(pts[1] as u64);
    let dir = e.sub(&b, &a);
    let mut reconstructed: Vec<usize> = e
        .base()
        .elements()
        .into_iter()
        .map(|c| e.index(&e.add(&a, &e.mul(&e.embed(c), &dir))) as usize)
        .collect();
    reconstructed.sort_unstable();
    if reconstructed != pts {
        return false;
    }
    e.is_square(&dir)
        .expect("distinct points give a nonzero direction")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ext(q: u64) -> ExtField {
        ExtField::for_q(q).unwrap()
    }

    #[test]
    fn slope_census_q3() {
        let e = ext(3);
        let slopes = all_slopes(&e);
        assert_eq!(slopes.len(), 4);
        let notations: Vec<String> = slopes.iter().map(|s| s.notation(&e)).collect();
        assert_eq!(notations, ["1+0*a", "0+1*a", "1+1*a", "2+1*a"]);
        let quadratic: Vec<bool> = slopes.iter().map(|s| s.is_quadratic()).collect();
        assert_eq!(quadratic, [true, true, false, false]);
    }

    #[test]
    fn slope_census_counts() {
        for q in [3, 5, 7, 9, 11, 13] {
            let e = ext(q);
            let slopes = all_slopes(&e);
            assert_eq!(slopes.len() as u64, q + 1);
            let quad = slopes.iter().filter(|s| s.is_quadratic()).count() as u64;
            assert_eq!(quad, (q + 1) / 2, "q={q}");
            assert!(slopes[0].is_quadratic(), "slope 1 must be quadratic");
        }
    }

    #[test]
    fn line_index_closed_form() {
        let e = ext(3);
        let slopes = all_slopes(&e);
        // slope 1: index of x+y*a is y; the zero vertex lies on index 0
        assert!(line_index_of(&e.zero(), &slopes[0], &e).is_zero());
        assert_eq!(
            e.base()
                .index(&line_index_of(&e.element(5), &slopes[0], &e)),
            1
        );
        // slope 1+a at v = 2+1*a: index = x - i*y = 2 - 1 = 1
        assert_eq!(
            e.base()
                .index(&line_index_of(&e.element(5), &slopes[2], &e)),
            1
        );
        // base-field element j sits on the line of index j for shifted slopes
        for s in &slopes[1..] {
            for j in 0..3 {
                let v = e.embed(e.base().element(j));
                assert_eq!(e.base().index(&line_index_of(&v, s, &e)), j);
            }
        }
    }

    #[test]
    fn lines_partition_the_plane() {
        for q in [3, 5, 9] {
            let e = ext(q);
            for s in all_slopes(&e) {
                let mut seen = vec![false; e.order() as usize];
                for j in 0..q {
                    let ln = line(&s, &e.base().element(j), &e);
                    assert_eq!(ln.points().len() as u64, q);
                    for v in ln.vertex_indices(&e) {
                        assert!(!seen[v], "vertex {v} covered twice");
                        seen[v] = true;
                    }
                }
                assert!(seen.iter().all(|&b| b));
            }
        }
    }

    #[test]
    fn oa_full_q3() {
        let e = ext(3);
        let oa = build_oa_full(&e);
        assert_eq!((oa.m(), oa.n()), (4, 3));
        assert_eq!(oa.rows()[0], vec![0, 0, 0, 1, 1, 1, 2, 2, 2]);
        assert_eq!(oa.rows()[1], vec![0, 1, 2, 0, 1, 2, 0, 1, 2]);
        assert!(validate_oa(&oa).is_ok());
    }

    #[test]
    fn oa_quadratic_dimensions() {
        for (q, m) in [(3, 2), (5, 3), (7, 4), (9, 5)] {
            let e = ext(q);
            let oa = build_oa_quadratic(&e);
            assert_eq!((oa.m(), oa.n() as u64), (m, q));
            assert!(validate_oa(&oa).is_ok());
        }
    }

    #[test]
    fn validator_finds_defects() {
        // single row: vacuous pair condition, balance still required
        let single = OrthogonalArray::from_rows(
            2,
            vec![vec![0, 1, 0, 1]],
            vec!["r".into()],
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
        );
        assert!(validate_oa(&single).is_ok());

        let unbalanced = OrthogonalArray::from_rows(
            2,
            vec![vec![0, 0, 0, 1]],
            vec!["r".into()],
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
        );
        assert_eq!(
            validate_oa(&unbalanced),
            Err(OaViolation::RowImbalance {
                row: 0,
                symbol: 0,
                count: 3
            })
        );

        // duplicated column => duplicated pair
        let dup = OrthogonalArray::from_rows(
            2,
            vec![vec![0, 0, 1, 1], vec![0, 0, 1, 1]],
            vec!["r".into(), "s".into()],
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
        );
        assert!(matches!(
            validate_oa(&dup),
            Err(OaViolation::PairDefect { count: 2, .. })
        ));
    }

    #[test]
    fn canonical_partitions_q3() {
        let e = ext(3);
        let parts = canonical_partitions(&e);
        assert_eq!(parts.len(), 2);
        assert_eq!(
            parts[0].cliques(),
            &[vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]]
        );
        assert_eq!(
            parts[1].cliques(),
            &[vec![0, 3, 6], vec![1, 4, 7], vec![2, 5, 8]]
        );
    }

    #[test]
    fn partition_shape() {
        for q in [3, 5, 7, 9, 11, 13] {
            let e = ext(q);
            let parts = canonical_partitions(&e);
            assert_eq!(parts.len() as u64, (q + 1) / 2);
            for part in &parts {
                assert_eq!(part.cliques().len() as u64, q);
                assert!(part.cliques().iter().all(|c| c.len() as u64 == q));
                // the first clique is the line through 0
                assert_eq!(part.cliques()[0][0], 0);
            }
        }
    }

    #[test]
    fn quadratic_line_classification() {
        let e = ext(3);
        let parts = canonical_partitions(&e);
        for part in &parts {
            for clique in part.cliques() {
                assert!(is_quadratic_line(clique, &e));
            }
        }
        // the embedded base field is the slope-1 line through 0
        assert!(is_quadratic_line(&[0, 1, 2], &e));
        // the vertical line {c*a} has slope alpha, a square in GF(9)
        assert!(is_quadratic_line(&[0, 3, 6], &e));
        // a non-line set of the right size
        assert!(!is_quadratic_line(&[0, 1, 3], &e));
        // wrong sizes
        assert!(!is_quadratic_line(&[0, 1], &e));
        assert!(!is_quadratic_line(&[0, 1, 2, 3], &e));
        // non-quadratic line through 0 with slope 1+a: {0, 1+a, 2+2a} = {0, 4, 8}
        assert!(!is_quadratic_line(&[0, 4, 8], &e));
    }
}
