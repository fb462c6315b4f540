//! Incremental fraction-free Gauss-Jordan elimination over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Q;

pub(crate) type SparseRow = Vec<(usize, BigInt)>;

/// Clears denominators and returns the primitive integer row.
pub(crate) fn integer_row(v: &[Q]) -> SparseRow {
    let lcm = v
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut row: SparseRow = v
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(j, x)| (j, x.numer() * (&lcm / x.denom())))
        .collect();
    make_primitive(&mut row);
    row
}

/// Integer entries for the elimination. `None` from an arithmetic method
/// means overflow.
trait Entry: Clone + Sized {
    fn from_big(x: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, g: &Self) -> Self;
    fn is_unit(&self) -> bool;
}

impl Entry for i128 {
    fn from_big(x: &BigInt) -> Option<Self> {
        x.to_i128().filter(|v| *v != i128::MIN)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other).filter(|v| *v != i128::MIN)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other).filter(|v| *v != i128::MIN)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, g: &Self) -> Self {
        self / g
    }
    fn is_unit(&self) -> bool {
        self.unsigned_abs() == 1
    }
}

impl Entry for BigInt {
    fn from_big(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, g: &Self) -> Self {
        self / g
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
}

type Row<T> = Vec<(usize, T)>;

fn make_primitive<T: Entry>(row: &mut Row<T>) {
    let Some(first) = row.first() else {
        return;
    };
    let mut g = first.1.gcd(&first.1);
    for (_, x) in row.iter().skip(1) {
        if g.is_unit() {
            return;
        }
        g = g.gcd(x);
    }
    if g.is_unit() || g.is_zero() {
        return;
    }
    for (_, x) in row.iter_mut() {
        *x = x.div_exact(&g);
    }
}

/// `a * x - b * y` on sorted sparse rows.
fn combine<T: Entry>(a: &T, x: &Row<T>, b: &T, y: &Row<T>) -> Option<Row<T>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a.mul(&x[i].1)?));
            i += 1;
        } else if take_y {
            out.push((y[j].0, b.mul(&y[j].1)?.neg()?));
            j += 1;
        } else {
            let v = a.mul(&x[i].1)?.sub(&b.mul(&y[j].1)?)?;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

/// `x` with column `c` eliminated by the pivot row `p` (pivot at `c`),
/// made primitive.
fn eliminate<T: Entry>(x: &Row<T>, p: &Row<T>, c: usize) -> Option<Row<T>> {
    let xc = entry(x, c)?;
    let pc = entry(p, c).expect("pivot entry");
    let g = pc.gcd(xc);
    let mut out = combine(&pc.div_exact(&g), x, &xc.div_exact(&g), p)?;
    make_primitive(&mut out);
    Some(out)
}

fn entry<T>(row: &Row<T>, col: usize) -> Option<&T> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|k| &row[k].1)
}

#[derive(Debug, Clone)]
struct Core<T> {
    rows: Vec<(usize, Row<T>)>,
    pivot_row: Vec<Option<usize>>,
}

enum Step<T> {
    Dependent,
    Insert {
        pivot: usize,
        row: Row<T>,
        updates: Vec<(usize, Row<T>)>,
    },
}

impl<T: Entry> Core<T> {
    fn new(cols: usize) -> Self {
        Core {
            rows: Vec::new(),
            pivot_row: vec![None; cols],
        }
    }

    fn reduce(&self, mut row: Row<T>) -> Option<Row<T>> {
        let hits: Vec<usize> = row
            .iter()
            .filter_map(|(c, _)| self.pivot_row[*c])
            .collect();
        for r in hits {
            let (pc, prow) = &self.rows[r];
            if entry(&row, *pc).is_some() {
                row = eliminate(&row, prow, *pc)?;
            }
        }
        make_primitive(&mut row);
        Some(row)
    }

    /// Computes the effect of inserting `row` without mutating anything.
    fn plan(&self, row: Row<T>) -> Option<Step<T>> {
        let mut row = self.reduce(row)?;
        if row.is_empty() {
            return Some(Step::Dependent);
        }
        if row[0].1.is_negative() {
            for (_, x) in row.iter_mut() {
                *x = x.neg()?;
            }
        }
        let pivot = row[0].0;
        let mut updates = Vec::new();
        for (k, (_, other)) in self.rows.iter().enumerate() {
            if entry(other, pivot).is_some() {
                updates.push((k, eliminate(other, &row, pivot)?));
            }
        }
        Some(Step::Insert {
            pivot,
            row,
            updates,
        })
    }

    fn commit(&mut self, step: Step<T>) -> bool {
        match step {
            Step::Dependent => false,
            Step::Insert {
                pivot,
                row,
                updates,
            } => {
                for (k, r) in updates {
                    self.rows[k].1 = r;
                }
                self.pivot_row[pivot] = Some(self.rows.len());
                self.rows.push((pivot, row));
                true
            }
        }
    }

    fn to_big(&self) -> Core<BigInt> {
        Core {
            rows: self
                .rows
                .iter()
                .map(|(p, r)| (*p, r.iter().map(|(c, x)| (*c, x.to_big())).collect()))
                .collect(),
            pivot_row: self.pivot_row.clone(),
        }
    }

    fn nullspace(&self, cols: usize) -> Vec<Vec<Q>> {
        let mut slot = vec![usize::MAX; cols];
        let mut basis: Vec<Vec<Q>> = (0..cols)
            .filter(|&c| self.pivot_row[c].is_none())
            .enumerate()
            .map(|(k, f)| {
                slot[f] = k;
                let mut v = vec![Q::zero(); cols];
                v[f] = Q::one();
                v
            })
            .collect();
        for (pc, row) in &self.rows {
            let p = entry(row, *pc).expect("pivot entry").to_big();
            for (c, x) in row {
                if c != pc {
                    basis[slot[*c]][*pc] = -Q::new(x.to_big(), p.clone());
                }
            }
        }
        basis
    }
}

fn convert<T: Entry>(row: &SparseRow) -> Option<Row<T>> {
    row.iter()
        .map(|(c, x)| T::from_big(x).map(|v| (*c, v)))
        .collect()
}

#[derive(Debug, Clone)]
enum Backend {
    Small(Core<i128>),
    Big(Core<BigInt>),
}

/// Incremental fraction-free Gauss-Jordan elimination over the integers.
///
/// Rows are kept primitive and fully reduced: every pivot column is zero
/// in every row except its own, so fill-in is confined to non-pivot
/// columns. Arithmetic runs on `i128` and moves to big integers for good
/// on the first overflow.
#[derive(Debug, Clone)]
pub struct RowReducer {
    cols: usize,
    backend: Backend,
}

impl RowReducer {
    pub fn new(cols: usize) -> Self {
        RowReducer {
            cols,
            backend: Backend::Small(Core::new(cols)),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        match &self.backend {
            Backend::Small(c) => c.rows.len(),
            Backend::Big(c) => c.rows.len(),
        }
    }

    /// Adds an integer row; returns true if the rank grew.
    pub(crate) fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = row;
        row.retain(|(_, x)| !Zero::is_zero(x));
        row.sort_by_key(|(c, _)| *c);
        if let Backend::Small(core) = &mut self.backend {
            if let Some(step) = convert::<i128>(&row).and_then(|r| core.plan(r)) {
                return core.commit(step);
            }
            self.backend = Backend::Big(core.to_big());
        }
        match &mut self.backend {
            Backend::Big(core) => {
                let step = core.plan(row).expect("big integers do not overflow");
                core.commit(step)
            }
            Backend::Small(_) => unreachable!(),
        }
    }

    pub fn insert_rational(&mut self, v: &[Q]) -> bool {
        assert_eq!(v.len(), self.cols);
        self.insert(integer_row(v))
    }

    /// True if `v` lies in the span of the inserted rows.
    pub fn contains(&self, v: &[Q]) -> bool {
        let row = integer_row(v);
        match &self.backend {
            Backend::Small(core) => {
                if let Some(r) = convert::<i128>(&row).and_then(|r| core.reduce(r)) {
                    return r.is_empty();
                }
                core.to_big()
                    .reduce(row)
                    .expect("big integers do not overflow")
                    .is_empty()
            }
            Backend::Big(core) => core.reduce(row).expect("no overflow").is_empty(),
        }
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut p: Vec<usize> = match &self.backend {
            Backend::Small(c) => c.rows.iter().map(|(p, _)| *p).collect(),
            Backend::Big(c) => c.rows.iter().map(|(p, _)| *p).collect(),
        };
        p.sort_unstable();
        p
    }

    /// Basis of the common kernel of the inserted rows, one vector per
    /// non-pivot column `f` (with `v_f = 1` and the other free entries 0),
    /// in increasing order of `f`.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        match &self.backend {
            Backend::Small(c) => c.nullspace(self.cols),
            Backend::Big(c) => c.nullspace(self.cols),
        }
    }
}
