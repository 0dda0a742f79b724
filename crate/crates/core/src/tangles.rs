//! Coloured directed ribbon tangles: the eight atoms, evaluation of the
//! Reshetikhin-Turaev functor on sliced diagrams, cabling of non-fundamental
//! colours through the canonical path projectors, and the Markov-trace
//! shortcut for braid closures.
//!
//! Conventions: strands are read top to bottom; a diagram is a list of rows,
//! first row at the top, and the evaluated operator maps the top boundary
//! object to the bottom one.  Crossings act on downward strands only; upward
//! strands pass through identities and the four cup/cap atoms.

use crate::cyclo::Cyc;
use crate::linalg::SpMat;
use crate::rootdata::Weight;
use crate::towers::{
    check_width, discover_bratteli, path_projection, realization_path, Tower, TowerError,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AtomKind {
    /// downward identity strand
    IdDown,
    /// upward identity strand
    IdUp,
    /// positive crossing of two downward strands
    CrossPos,
    /// negative crossing of two downward strands
    CrossNeg,
    /// evaluation V* (x) V -> C
    CapPlus,
    /// evaluation V (x) V* -> C (inserts v^{-1}u = K_2rho)
    CapMinus,
    /// creation C -> V (x) V*
    CupPlus,
    /// creation C -> V* (x) V (inserts v u^{-1} = K_2rho^{-1})
    CupMinus,
}

/// One atom instance with its component labels (two for crossings).
#[derive(Clone, Debug, PartialEq)]
pub struct Atom {
    pub kind: AtomKind,
    pub comps: Vec<usize>,
}

impl Atom {
    pub fn new1(kind: AtomKind, c: usize) -> Self {
        Atom {
            kind,
            comps: vec![c],
        }
    }

    pub fn cross(sign: i8, a: usize, b: usize) -> Self {
        Atom {
            kind: if sign >= 0 {
                AtomKind::CrossPos
            } else {
                AtomKind::CrossNeg
            },
            comps: vec![a, b],
        }
    }
}

/// A boundary leg at the component level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leg {
    pub comp: usize,
    pub up: bool,
}

fn leg(comp: usize, up: bool) -> Leg {
    Leg { comp, up }
}

impl Atom {
    /// (top legs, bottom legs) at the component level.
    pub fn signature(&self) -> (Vec<Leg>, Vec<Leg>) {
        use AtomKind::*;
        match self.kind {
            IdDown => (
                vec![leg(self.comps[0], false)],
                vec![leg(self.comps[0], false)],
            ),
            IdUp => (
                vec![leg(self.comps[0], true)],
                vec![leg(self.comps[0], true)],
            ),
            CrossPos | CrossNeg => (
                vec![leg(self.comps[0], false), leg(self.comps[1], false)],
                vec![leg(self.comps[1], false), leg(self.comps[0], false)],
            ),
            CapPlus => (
                vec![leg(self.comps[0], true), leg(self.comps[0], false)],
                vec![],
            ),
            CapMinus => (
                vec![leg(self.comps[0], false), leg(self.comps[0], true)],
                vec![],
            ),
            CupPlus => (
                vec![],
                vec![leg(self.comps[0], false), leg(self.comps[0], true)],
            ),
            CupMinus => (
                vec![],
                vec![leg(self.comps[0], true), leg(self.comps[0], false)],
            ),
        }
    }
}

/// A sliced diagram: rows of atoms, top row first, plus per-component
/// framing numbers (defaulting to the blackboard writhe when absent).
#[derive(Clone, Debug)]
pub struct TangleDiagram {
    pub components: usize,
    pub rows: Vec<Vec<Atom>>,
    pub framings: Option<Vec<i64>>,
}

#[derive(Debug, thiserror::Error)]
pub enum TangleError {
    #[error("row {row}: top signature does not compose with the previous row's bottom")]
    SignatureMismatch { row: usize },
    #[error("component index {comp} out of range (diagram declares {total})")]
    BadComponent { comp: usize, total: usize },
    #[error("colouring supplies {got} colours for {want} components")]
    ColouringLength { got: usize, want: usize },
    #[error("framing list has {got} entries for {want} components")]
    FramingLength { got: usize, want: usize },
    #[error("a (0,0)-diagram was expected but the boundary is nonempty")]
    NotClosed,
    #[error("colour {0} needs a cable projector but the component never enters the diagram through a cup or top boundary")]
    NoMarkingPoint(String),
    #[error(transparent)]
    Tower(#[from] TowerError),
}

impl TangleDiagram {
    /// Component-level boundary signatures, after validating that adjacent
    /// rows compose.
    pub fn boundary(&self) -> Result<(Vec<Leg>, Vec<Leg>), TangleError> {
        let mut top: Option<Vec<Leg>> = None;
        let mut prev_bottom: Option<Vec<Leg>> = None;
        for (ri, row) in self.rows.iter().enumerate() {
            let mut row_top = Vec::new();
            let mut row_bottom = Vec::new();
            for atom in row {
                for &c in &atom.comps {
                    if c >= self.components {
                        return Err(TangleError::BadComponent {
                            comp: c,
                            total: self.components,
                        });
                    }
                }
                let (t, b) = atom.signature();
                row_top.extend(t);
                row_bottom.extend(b);
            }
            if let Some(pb) = &prev_bottom {
                if *pb != row_top {
                    return Err(TangleError::SignatureMismatch { row: ri });
                }
            } else {
                top = Some(row_top);
            }
            prev_bottom = Some(row_bottom);
        }
        Ok((top.unwrap_or_default(), prev_bottom.unwrap_or_default()))
    }

    /// Blackboard writhe per component: signed self-crossing counts.
    pub fn writhes(&self) -> Vec<i64> {
        let mut w = vec![0i64; self.components];
        for row in &self.rows {
            for atom in row {
                let s = match atom.kind {
                    AtomKind::CrossPos => 1,
                    AtomKind::CrossNeg => -1,
                    _ => continue,
                };
                if atom.comps[0] == atom.comps[1] {
                    w[atom.comps[0]] += s;
                }
            }
        }
        w
    }
}

// ---------------------------------------------------------------------------
// Colours
// ---------------------------------------------------------------------------

/// A colour: a closed-alcove weight realised by cabling the fundamental
/// strand, with the canonical path projector for widths >= 2.
pub struct Color {
    pub weight: Weight,
    pub width: usize,
    pub projector: Option<SpMat<Cyc>>,
}

/// Build the colour data for a weight, constructing the canonical-path
/// projector on V^(x)width when the cable is non-trivial.
pub fn make_color(tower: &Tower, weight: &Weight) -> Result<Color, TangleError> {
    let width = weight.width();
    let projector = if width >= 2 {
        let diagram = discover_bratteli(tower, width, true)?;
        let path = realization_path(tower, &diagram, weight)?;
        Some(path_projection(tower, &diagram, &path)?)
    } else {
        None
    };
    Ok(Color {
        weight: weight.clone(),
        width,
        projector,
    })
}

// ---------------------------------------------------------------------------
// Elementary and cabled atom operators
// ---------------------------------------------------------------------------

fn cap_plus_elem(tower: &Tower) -> SpMat<Cyc> {
    let d = tower.dim();
    let mut m = SpMat::zeros(1, d * d);
    for i in 0..d {
        m.set(0, i * d + i, Cyc::one());
    }
    m
}

fn cap_minus_elem(tower: &Tower) -> SpMat<Cyc> {
    let d = tower.dim();
    let mut m = SpMat::zeros(1, d * d);
    for i in 0..d {
        let k = tower.rep.k2rho.cols[i]
            .iter()
            .find(|(r, _)| *r == i)
            .map(|(_, v)| v.clone())
            .unwrap();
        let v = if tower.rep.gradings[i] == 1 { -k } else { k };
        m.set(0, i * d + i, v);
    }
    m
}

fn cup_plus_elem(tower: &Tower) -> SpMat<Cyc> {
    let d = tower.dim();
    let mut m = SpMat::zeros(d * d, 1);
    for r in 0..d {
        m.set(r * d + r, 0, Cyc::one());
    }
    m
}

fn cup_minus_elem(tower: &Tower) -> SpMat<Cyc> {
    let d = tower.dim();
    let mut m = SpMat::zeros(d * d, 1);
    for r in 0..d {
        let k = tower.rep.k2rho_inv.cols[r]
            .iter()
            .find(|(i, _)| *i == r)
            .map(|(_, v)| v.clone())
            .unwrap();
        let v = if tower.rep.gradings[r] == 1 { -k } else { k };
        m.set(r * d + r, 0, v);
    }
    m
}

/// Nested cable cap/cup over `w` elementary strands.
fn cable_pairing(tower: &Tower, w: usize, elem: &SpMat<Cyc>, creation: bool) -> SpMat<Cyc> {
    let d = tower.dim();
    if w == 0 {
        return SpMat::identity(1);
    }
    let mut acc = elem.clone();
    for k in 2..=w {
        let side = SpMat::identity(d.pow((k - 1) as u32));
        let step = side.kron(elem).kron(&side);
        acc = if creation {
            // widen outwards: new pair created inside the existing ones
            step.mul(&acc)
        } else {
            // consume inwards: innermost pair first
            acc.mul(&step)
        };
    }
    acc
}

/// The braid word (1-based positions, uniform sign) crossing a width-`a`
/// block over an adjacent width-`b` block.
fn block_cross_word(a: usize, b: usize) -> Vec<usize> {
    let mut word = Vec::new();
    for r in (1..=a).rev() {
        for s in 0..b {
            word.push(r + s);
        }
    }
    word
}

/// Block crossing operator on `V^(x)(a+b)`.
fn cable_cross(tower: &Tower, a: usize, b: usize, sign: i8) -> SpMat<Cyc> {
    let total = a + b;
    if total == 0 {
        return SpMat::identity(1);
    }
    let mut acc = SpMat::identity(tower.dim_pow(total));
    if a == 0 || b == 0 {
        return acc;
    }
    for pos in block_cross_word(a, b) {
        let local = tower.rhat_local(total, pos, sign);
        // application order top-to-bottom: later letters compose on the left
        acc = local.mul(&acc);
    }
    acc
}

/// Evaluate a single atom as an operator between its expanded boundary
/// objects.  Cabled colours act blockwise; projectors are NOT inserted here
/// (they are absorbed once per component during diagram evaluation).
pub fn eval_atom(tower: &Tower, atom: &Atom, colors: &[Color]) -> SpMat<Cyc> {
    use AtomKind::*;
    match atom.kind {
        IdDown | IdUp => SpMat::identity(tower.dim_pow(colors[atom.comps[0]].width)),
        CrossPos => cable_cross(
            tower,
            colors[atom.comps[0]].width,
            colors[atom.comps[1]].width,
            1,
        ),
        CrossNeg => cable_cross(
            tower,
            colors[atom.comps[0]].width,
            colors[atom.comps[1]].width,
            -1,
        ),
        CapPlus => cable_pairing(
            tower,
            colors[atom.comps[0]].width,
            &cap_plus_elem(tower),
            false,
        ),
        CapMinus => cable_pairing(
            tower,
            colors[atom.comps[0]].width,
            &cap_minus_elem(tower),
            false,
        ),
        CupPlus => cable_pairing(
            tower,
            colors[atom.comps[0]].width,
            &cup_plus_elem(tower),
            true,
        ),
        CupMinus => cable_pairing(
            tower,
            colors[atom.comps[0]].width,
            &cup_minus_elem(tower),
            true,
        ),
    }
}

// ---------------------------------------------------------------------------
// Diagram evaluation
// ---------------------------------------------------------------------------

/// The result of evaluating a diagram: a scalar for (0,0)-diagrams, otherwise
/// the operator together with its expanded boundary legs.
pub enum Evaluation {
    Scalar(Cyc),
    Operator {
        matrix: SpMat<Cyc>,
        top: Vec<Leg>,
        bottom: Vec<Leg>,
    },
}

impl Evaluation {
    pub fn scalar(self) -> Option<Cyc> {
        match self {
            Evaluation::Scalar(c) => Some(c),
            _ => None,
        }
    }
}

fn expanded_width(legs: &[Leg], colors: &[Color]) -> usize {
    legs.iter().map(|l| colors[l.comp].width).sum()
}

/// Evaluate the functor on a sliced diagram under the given colouring.
/// Framing numbers (when present) are applied as per-component curl
/// corrections `chi_lambda(v^{-1})^(n_c - w_c)` against the blackboard writhe.
pub fn eval_diagram(
    tower: &Tower,
    diagram: &TangleDiagram,
    coloring: &[Weight],
) -> Result<Evaluation, TangleError> {
    if coloring.len() != diagram.components {
        return Err(TangleError::ColouringLength {
            got: coloring.len(),
            want: diagram.components,
        });
    }
    if let Some(f) = &diagram.framings {
        if f.len() != diagram.components {
            return Err(TangleError::FramingLength {
                got: f.len(),
                want: diagram.components,
            });
        }
    }
    let (top, bottom) = diagram.boundary()?;
    let colors: Vec<Color> = coloring
        .iter()
        .map(|w| make_color(tower, w))
        .collect::<Result<_, _>>()?;

    // Marking points: for each cabled component, the first cup whose colour
    // needs a projector; fall back to the first downward top-boundary block.
    let mut pending: Vec<usize> = (0..diagram.components)
        .filter(|&c| colors[c].projector.is_some())
        .collect();

    let top_dim = tower.dim_pow(expanded_width(&top, &colors));
    let mut acc = SpMat::identity(top_dim);

    // Projector insertions at the top boundary for components without cups.
    let has_cup: Vec<bool> = (0..diagram.components)
        .map(|c| {
            diagram.rows.iter().flatten().any(|a| {
                matches!(a.kind, AtomKind::CupPlus | AtomKind::CupMinus) && a.comps[0] == c
            })
        })
        .collect();
    for c in pending.clone() {
        if has_cup[c] {
            continue;
        }
        let mut offset = 0usize;
        let mut found = false;
        for l in &top {
            if l.comp == c && !l.up {
                let placed = place_projector(
                    tower,
                    colors[c].projector.as_ref().unwrap(),
                    offset,
                    expanded_width(&top, &colors),
                    colors[c].width,
                );
                acc = placed.mul(&acc);
                found = true;
                break;
            }
            offset += colors[l.comp].width;
        }
        if !found {
            return Err(TangleError::NoMarkingPoint(format!("{}", colors[c].weight)));
        }
        pending.retain(|&x| x != c);
    }

    for row in &diagram.rows {
        // Row operator: plain tensor of atom operators (all atoms are even).
        let mut row_op = SpMat::identity(1);
        for atom in row {
            row_op = row_op.kron(&eval_atom(tower, atom, &colors));
        }
        acc = row_op.mul(&acc);
        // Insert projectors right below the first cup of each cabled component.
        if !pending.is_empty() {
            let mut offset = 0usize;
            let mut row_bottom_width = 0usize;
            for atom in row {
                let (_, b) = atom.signature();
                row_bottom_width += expanded_width(&b, &colors);
            }
            for atom in row {
                let (_, b) = atom.signature();
                let c = atom.comps[0];
                if matches!(atom.kind, AtomKind::CupPlus | AtomKind::CupMinus)
                    && pending.contains(&c)
                {
                    let w = colors[c].width;
                    // down-block offset inside the cup's legs
                    let local = if atom.kind == AtomKind::CupPlus { 0 } else { w };
                    let proj = colors[c].projector.as_ref().unwrap();
                    acc =
                        place_projector(tower, proj, offset + local, row_bottom_width, w).mul(&acc);
                    pending.retain(|&x| x != c);
                }
                offset += expanded_width(&b, &colors);
            }
        }
    }

    // Framing corrections against the blackboard writhe.
    let mut correction = Cyc::one();
    if let Some(framings) = &diagram.framings {
        let writhes = diagram.writhes();
        for c in 0..diagram.components {
            let twist = framings[c] - writhes[c];
            if twist != 0 {
                correction = correction * tower.rep.p.chi_v_inv(&colors[c].weight).pow(twist);
            }
        }
    }

    if top.is_empty() && bottom.is_empty() {
        let value = acc.cols[0]
            .first()
            .map(|(_, v)| v.clone())
            .unwrap_or_else(Cyc::zero);
        Ok(Evaluation::Scalar(value * correction))
    } else {
        Ok(Evaluation::Operator {
            matrix: acc.scale(&correction),
            top,
            bottom,
        })
    }
}

fn place_projector(
    tower: &Tower,
    proj: &SpMat<Cyc>,
    offset: usize,
    total_width: usize,
    w: usize,
) -> SpMat<Cyc> {
    let left = SpMat::identity(tower.dim_pow(offset));
    let right = SpMat::identity(tower.dim_pow(total_width - offset - w));
    left.kron(proj).kron(&right)
}

// ---------------------------------------------------------------------------
// Braid closures
// ---------------------------------------------------------------------------

/// Components of the closure of a braid word on `strands` strands: the cycles
/// of the underlying permutation.  Returns `(component of each strand,
/// component count)`.
pub fn braid_components(strands: usize, word: &[i32]) -> (Vec<usize>, usize) {
    let mut perm: Vec<usize> = (0..strands).collect();
    for &letter in word {
        let i = letter.unsigned_abs() as usize - 1;
        perm.swap(i, i + 1);
    }
    // perm[j]: the bottom position of the strand starting at top position j.
    let mut comp = vec![usize::MAX; strands];
    let mut count = 0;
    for start in 0..strands {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut j = start;
        while comp[j] == usize::MAX {
            comp[j] = count;
            j = perm[j];
        }
        count += 1;
    }
    (comp, count)
}

/// Per-component blackboard writhes and pairwise linking numbers of the
/// braid closure.
pub fn braid_crossing_data(
    strands: usize,
    word: &[i32],
    comp: &[usize],
    ncomp: usize,
) -> (Vec<i64>, Vec<Vec<i64>>) {
    let mut writhe = vec![0i64; ncomp];
    let mut lk2 = vec![vec![0i64; ncomp]; ncomp];
    let mut cur: Vec<usize> = (0..strands).collect();
    for &letter in word {
        let i = letter.unsigned_abs() as usize - 1;
        let s = if letter > 0 { 1 } else { -1 };
        let (a, b) = (comp[cur[i]], comp[cur[i + 1]]);
        if a == b {
            writhe[a] += s;
        } else {
            lk2[a][b] += s;
            lk2[b][a] += s;
        }
        cur.swap(i, i + 1);
    }
    let lk = lk2
        .iter()
        .map(|row| row.iter().map(|&x| x / 2).collect())
        .collect();
    (writhe, lk)
}

/// Evaluate a coloured framed braid closure by the Markov trace:
/// `str(K_2rho^(x)W o projectors o braid) * prod_c chi_c(v^{-1})^(n_c - w_c)`.
pub fn braid_closure_value(
    tower: &Tower,
    strands: usize,
    word: &[i32],
    framings: &[i64],
    coloring: &[Weight],
) -> Result<Cyc, TangleError> {
    let (comp, ncomp) = braid_components(strands, word);
    if coloring.len() != ncomp {
        return Err(TangleError::ColouringLength {
            got: coloring.len(),
            want: ncomp,
        });
    }
    if framings.len() != ncomp {
        return Err(TangleError::FramingLength {
            got: framings.len(),
            want: ncomp,
        });
    }
    let colors: Vec<Color> = coloring
        .iter()
        .map(|w| make_color(tower, w))
        .collect::<Result<_, _>>()?;
    let widths: Vec<usize> = (0..strands).map(|j| colors[comp[j]].width).collect();
    let total: usize = widths.iter().sum();
    check_width(tower.rep.p, total)?;

    // Cabled braid representation.
    let mut acc = SpMat::identity(tower.dim_pow(total));
    // Projector insertion: once per component, on the cable of its first strand.
    for c in 0..ncomp {
        if let Some(proj) = &colors[c].projector {
            let first = (0..strands).find(|&j| comp[j] == c).unwrap();
            let offset: usize = widths[..first].iter().sum();
            let placed = place_projector(tower, proj, offset, total, colors[c].width);
            acc = placed.mul(&acc);
        }
    }
    let mut cur_width: Vec<usize> = widths.clone();
    for &letter in word {
        let i = letter.unsigned_abs() as usize - 1;
        let s: i8 = if letter > 0 { 1 } else { -1 };
        let (a, b) = (cur_width[i], cur_width[i + 1]);
        if a > 0 && b > 0 {
            let offset: usize = cur_width[..i].iter().sum();
            let local = cable_cross(tower, a, b, s);
            let left = SpMat::identity(tower.dim_pow(offset));
            let right = SpMat::identity(tower.dim_pow(total - offset - a - b));
            acc = left.kron(&local).kron(&right).mul(&acc);
        }
        cur_width.swap(i, i + 1);
    }
    // Quantum supertrace and framing corrections.
    let mut value = tower.str_q(&acc, total);
    let (writhe, _) = braid_crossing_data(strands, word, &comp, ncomp);
    for c in 0..ncomp {
        let twist = framings[c] - writhe[c];
        if twist != 0 {
            value = value * tower.rep.p.chi_v_inv(&colors[c].weight).pow(twist);
        }
    }
    Ok(value)
}

/// Compile a coloured framed braid closure into a sliced atom diagram (the
/// oracle identity: its evaluation must match `braid_closure_value`).
pub fn compile_braid_closure(
    strands: usize,
    word: &[i32],
    framings: &[i64],
) -> Result<TangleDiagram, TangleError> {
    let (comp, ncomp) = braid_components(strands, word);
    if framings.len() != ncomp {
        return Err(TangleError::FramingLength {
            got: framings.len(),
            want: ncomp,
        });
    }
    let m = strands;
    let mut rows: Vec<Vec<Atom>> = Vec::new();
    // Nested creations: strand j's cable paired with the j-th up block from
    // the outside.
    for j in 0..m {
        let mut row = Vec::new();
        for k in 0..j {
            row.push(Atom::new1(AtomKind::IdDown, comp[k]));
        }
        row.push(Atom::new1(AtomKind::CupPlus, comp[j]));
        for k in (0..j).rev() {
            row.push(Atom::new1(AtomKind::IdUp, comp[k]));
        }
        rows.push(row);
    }
    let up_block: Vec<Atom> = (0..m)
        .rev()
        .map(|k| Atom::new1(AtomKind::IdUp, comp[k]))
        .collect();
    // Braid letters.
    let mut cur: Vec<usize> = (0..m).collect();
    for &letter in word {
        let i = letter.unsigned_abs() as usize - 1;
        let s: i8 = if letter > 0 { 1 } else { -1 };
        let mut row = Vec::new();
        for k in 0..i {
            row.push(Atom::new1(AtomKind::IdDown, comp[cur[k]]));
        }
        row.push(Atom::cross(s, comp[cur[i]], comp[cur[i + 1]]));
        for k in i + 2..m {
            row.push(Atom::new1(AtomKind::IdDown, comp[cur[k]]));
        }
        row.extend(up_block.iter().cloned());
        rows.push(row);
        cur.swap(i, i + 1);
    }
    // Nested caps: close bottom position j against top strand j's partner.
    for j in (0..m).rev() {
        let mut row = Vec::new();
        for k in 0..j {
            row.push(Atom::new1(AtomKind::IdDown, comp[cur[k]]));
        }
        row.push(Atom::new1(AtomKind::CapMinus, comp[j]));
        for k in (0..j).rev() {
            row.push(Atom::new1(AtomKind::IdUp, comp[k]));
        }
        rows.push(row);
    }
    Ok(TangleDiagram {
        components: ncomp,
        rows,
        framings: Some(framings.to_vec()),
    })
}
