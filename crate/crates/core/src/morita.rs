//! The generators `(G_k, F_k)` and the pipelines showing that the classes
//! they detect in ranks 4 and 6 are nonzero, plus the vanishing of the top
//! rank-6 quotient.

use crate::chain::{q, Chain, Key, Q};
use crate::chord::{self, ChordDiagram};
use crate::error::{invalid, Result};
use crate::fixtures;
use crate::forested::{self, ForestedGraph};
use crate::linalg::{quotient_dim, solve_membership, Echelon, NormalForm, Registry};
use crate::report::Report;
use crate::trace::{self, theta};
use rayon::prelude::*;
use std::fmt::Write as _;
use std::time::Instant;

/// `(G_k, F_k)`: both vertices of `Θ_k` blown up into `k`-gons, each polygon
/// minus one edge in the forest.
pub fn build_gk(k: usize) -> Result<ForestedGraph> {
    if k < 3 || k.is_multiple_of(2) {
        return invalid(format!("k = {k} must be odd and at least 3"));
    }
    trace::blowup(&theta(k))
}

/// The traceless rank-4 generators `(G_3, F')` and `(G_3, F'')`.
pub fn build_f_variants() -> (ForestedGraph, ForestedGraph) {
    (fixtures::g3_f1(), fixtures::g3_f2())
}

/// Sum of the chord reductions of a chain of forested keys with maximal trees.
pub fn chord_image(c: &Chain<Key>) -> Result<Chain<ChordDiagram>> {
    let terms: Vec<_> = c.iter().collect();
    let parts: Vec<Chain<ChordDiagram>> = terms
        .par_iter()
        .map(|(k, v)| chord::reduce_forested(&ForestedGraph::from_key(k)?).map(|x| x.scaled(v)))
        .collect::<Result<_>>()?;
    let mut out = Chain::zero();
    for p in &parts {
        out.add(p);
    }
    Ok(out)
}

/// Boundary of a forested chain, as chord diagrams.
pub fn boundary_image(c: &Chain<Key>) -> Result<Chain<ChordDiagram>> {
    chord_image(&forested::boundary(c)?)
}

/// The four rank-4 diagrams with names and the normal form in the basis `{A, C}`.
pub struct RankFour {
    pub names: Vec<(ChordDiagram, &'static str)>,
    pub relators: Vec<Chain<ChordDiagram>>,
    pub normal: NormalForm<ChordDiagram>,
}

impl RankFour {
    pub fn new() -> Self {
        let ds = chord::enumerate(4);
        let names: Vec<(ChordDiagram, &'static str)> = ds.into_iter().zip(["A", "B", "C", "D"]).collect();
        let relators = chord::sliding_relations(4);
        let eliminate: Vec<ChordDiagram> =
            names.iter().filter(|(_, n)| *n == "B" || *n == "D").map(|(d, _)| d.clone()).collect();
        let normal = NormalForm::new(&eliminate, &relators);
        RankFour { names, relators, normal }
    }

    pub fn diagram(&self, name: &str) -> &ChordDiagram {
        &self.names.iter().find(|(_, n)| *n == name).expect("named diagram").0
    }

    /// `4C-A`: positive terms first, then by name.
    pub fn show(&self, c: &Chain<ChordDiagram>) -> String {
        let mut terms: Vec<(bool, &str, Q)> = c
            .iter()
            .map(|(d, v)| {
                let name = self.names.iter().find(|(x, _)| x == d).map_or("?", |(_, n)| n);
                (v < &q(0), name, v.clone())
            })
            .collect();
        terms.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        if terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (neg, name, v)) in terms.iter().enumerate() {
            let mag = if *neg { -v.clone() } else { v.clone() };
            if *neg {
                s.push('-');
            } else if i > 0 {
                s.push('+');
            }
            if mag != q(1) {
                let _ = write!(s, "{mag}");
            }
            s.push_str(name);
        }
        s
    }

    pub fn reduce(&self, c: &Chain<ChordDiagram>) -> Chain<ChordDiagram> {
        self.normal.reduce(c)
    }
}

impl Default for RankFour {
    fn default() -> Self {
        Self::new()
    }
}

fn coeffs(v: &[Q]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// The rank-4 pipeline.
pub fn verify_mu3() -> Result<Report> {
    let t = Instant::now();
    let mut r = Report::new("mu3");
    let r4 = RankFour::new();
    r.check("diagrams", r4.names.iter().map(|(d, _)| d.to_string()).collect::<Vec<_>>().join(" "));
    // IHX on line edge (12) of D; on (45) of B, then on the image of (56)
    let d_rel = chord::ihx_expand(r4.diagram("D"), &[0])?;
    let b_rel = chord::ihx_expand(r4.diagram("B"), &[3, 4])?;
    r.check("ihx_D", r4.show(&d_rel));
    r.check("ihx_B", r4.show(&b_rel));
    r.value("sliding_rank", r4.normal.rank());
    r.check("quotient_dim", quotient_dim(&chord::enumerate(4), &r4.relators)?);

    let g3 = build_gk(3)?.normalize();
    let (f1, f2) = build_f_variants();
    let (f1, f2) = (f1.normalize(), f2.normalize());
    let b3 = forested::boundary(&g3)?;
    let b1 = forested::boundary(&f1)?;
    let b2 = forested::boundary(&f2)?;
    let (c3, c1, c2) = (chord_image(&b3)?, chord_image(&b1)?, chord_image(&b2)?);
    r.check("boundary_G3F3", r4.show(&r4.reduce(&c3)));
    r.check("boundary_G3F1", r4.show(&r4.reduce(&c1)));
    r.check("boundary_G3F2", r4.show(&r4.reduce(&c2)));
    let th = theta(3);
    r.check("trace_G3F1", trace::mu(&f1, &th)?);
    r.check("trace_G3F2", trace::mu(&f2, &th)?);
    r.value("trace_G3F1_chain_terms", trace::trace_chain(&f1)?.len());
    r.value("trace_G3F2_chain_terms", trace::trace_chain(&f2)?.len());
    r.check("trace_G3F3", trace::mu(&g3, &th)?);

    // ∂(G3,F3) + a ∂(G3,F') + b ∂(G3,F'') ≡ 0
    let mut span = vec![r4.reduce(&c1), r4.reduce(&c2)];
    span.extend(r4.relators.iter().cloned());
    let target = r4.reduce(&c3).scaled(&q(-1));
    let Some(sol) = solve_membership(&span, &target) else {
        r.check("z_coefficients", "not in span");
        r.elapsed = Some(t.elapsed());
        return Ok(r);
    };
    r.check("z_coefficients", coeffs(&sol[..2]));
    let mut z = g3.clone();
    z.add_scaled(&f1, &sol[0]);
    z.add_scaled(&f2, &sol[1]);
    let bz = forested::boundary(&z)?;
    let cz = chord_image(&bz)?;
    r.value("cycle_forested_terms", bz.len());
    r.value("cycle_chords_before_sliding", chord::show(&cz));
    r.check("cycle_check", r4.show(&r4.reduce(&cz)));
    r.check("mu", trace::mu(&z, &th)?);
    r.elapsed = Some(t.elapsed());
    Ok(r)
}

/// Rank-6 data shared by the rank-6 pipelines.
pub struct RankSix {
    pub diagrams: Vec<ChordDiagram>,
    pub antisymmetric: usize,
    pub sliding: Vec<Chain<ChordDiagram>>,
    pub type_one: Vec<Generator>,
    pub type_two: Vec<Generator>,
}

/// A forested generator `(G, L - e_i)` built from a diagram, with its boundary.
#[derive(Clone, Debug)]
pub struct Generator {
    pub diagram: ChordDiagram,
    pub removed: usize,
    pub graph: ForestedGraph,
    pub traceless: bool,
    pub boundary: Chain<ChordDiagram>,
}

impl Generator {
    pub fn new(d: &ChordDiagram, i: usize) -> Result<Self> {
        let graph = chord::line_removal(d, i);
        let traceless = trace::graphical_trace(&graph).is_zero();
        let boundary = chord::boundary_diagrams(&graph)?;
        Ok(Generator { diagram: d.clone(), removed: i, graph, traceless, boundary })
    }
}

fn generators(ds: &[ChordDiagram], removals: impl Fn(&ChordDiagram) -> Vec<usize> + Sync) -> Result<Vec<Generator>> {
    let per: Vec<Vec<Generator>> = ds
        .par_iter()
        .map(|d| removals(d).into_iter().map(|i| Generator::new(d, i)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    Ok(per.into_iter().flatten().collect())
}

impl RankSix {
    pub fn new() -> Result<Self> {
        let (diagrams, antisymmetric) = chord::enumerate_with_antisymmetric(6);
        let sliding = chord::sliding_relations(6);
        let t1: Vec<ChordDiagram> = diagrams.iter().filter(|d| d.contains(0, 2)).cloned().collect();
        let t2: Vec<ChordDiagram> = diagrams.iter().filter(|d| d.contains(0, 3)).cloned().collect();
        let type_one = generators(&t1, |_| vec![0])?;
        let type_two = generators(&t2, |_| vec![0])?;
        Ok(RankSix { diagrams, antisymmetric, sliding, type_one, type_two })
    }

    /// Every traceless nonzero `(G, L - e_i)` over all diagrams and line edges.
    pub fn line_removal_family(&self) -> Result<Vec<Generator>> {
        let n = 2 * 6 - 2;
        let all = generators(&self.diagrams, |_| (0..n - 1).collect())?;
        Ok(all.into_iter().filter(|g| g.traceless && !g.graph.normalize().is_zero()).collect())
    }

    fn registry(&self) -> Registry<ChordDiagram> {
        Registry::from_keys(self.diagrams.iter().cloned())
    }
}

/// Matrix text for a certificate section.
fn matrix_section(
    name: &str,
    reg: &Registry<ChordDiagram>,
    rows: &[Chain<ChordDiagram>],
    pivots: &[usize],
) -> Result<String> {
    let mut s = format!("# {name}\n");
    s.push_str(&crate::format::write_matrix(reg, rows)?);
    let labels: Vec<String> = pivots.iter().map(|&p| reg.label(p).to_string()).collect();
    let _ = writeln!(s, "# pivots: {}", labels.join(" "));
    Ok(s)
}

fn insert_all(ech: &mut Echelon, reg: &Registry<ChordDiagram>, rows: &[Chain<ChordDiagram>]) -> Result<()> {
    for row in rows {
        ech.insert(&reg.vector(row)?);
    }
    Ok(())
}

fn boundaries(gs: &[Generator]) -> Vec<Chain<ChordDiagram>> {
    gs.iter().map(|g| g.boundary.clone()).collect()
}

/// Result of a pipeline together with its auditable matrices.
pub struct Verification {
    pub report: Report,
    pub certificate: String,
}

/// The rank-6 pipeline.
pub fn verify_mu5() -> Result<Verification> {
    let t = Instant::now();
    let mut r = Report::new("mu5");
    let mut cert = String::new();
    let six = RankSix::new()?;
    let reg = six.registry();
    r.check("diagrams", six.diagrams.len());
    r.value("antisymmetric_diagrams", six.antisymmetric);
    let mut ech = Echelon::new();
    insert_all(&mut ech, &reg, &six.sliding)?;
    r.check("sliding_rank", ech.rank());
    r.check("quotient_dim", six.diagrams.len() - ech.rank());
    cert.push_str(&matrix_section("sliding relations", &reg, &six.sliding, &ech.pivots())?);

    r.check("type_one", six.type_one.len());
    r.check("type_two", six.type_two.len());
    r.check("type_one_traceless", six.type_one.iter().filter(|g| g.traceless).count());
    r.check("type_two_traceless", six.type_two.iter().filter(|g| g.traceless).count());

    let sliding_nf = NormalForm::new(&[], &six.sliding);
    let matches = |gs: &[Generator], form: &dyn Fn(&ChordDiagram) -> Result<Chain<ChordDiagram>>| -> Result<usize> {
        let mut n = 0;
        for g in gs {
            let mut diff = g.boundary.clone();
            diff.sub(&form(&g.diagram)?);
            n += sliding_nf.is_zero(&diff) as usize;
        }
        Ok(n)
    };
    let one_form = |x: &ChordDiagram| -> Result<Chain<ChordDiagram>> {
        let mut c = x.normalize().scaled(&q(2));
        c.add(&x.rotate());
        Ok(c)
    };
    let one_rotation = |x: &ChordDiagram| -> Result<Chain<ChordDiagram>> { Ok(x.rotate()) };
    let two_form = |y: &ChordDiagram| -> Result<Chain<ChordDiagram>> {
        let mut c = y.normalize();
        c.add(&y.rotate());
        c.add(&y.permute_feet(&[(3, 4), (4, 3)])?);
        c.sub(&y.permute_feet(&[(2, 4), (4, 3), (3, 2)])?);
        c.sub(&y.permute_feet(&[(2, 3), (3, 2)])?);
        Ok(c)
    };
    r.check("type_one_form", matches(&six.type_one, &one_form)?);
    r.note("boundaries compared with 2X+rho(X) modulo sliding relations");
    r.value("type_one_form_rotation_only", matches(&six.type_one, &one_rotation)?);
    r.note("boundaries compared with rho(X) modulo sliding relations");
    r.check("type_two_form", matches(&six.type_two, &two_form)?);

    let b1 = boundaries(&six.type_one);
    let b2 = boundaries(&six.type_two);
    let mut e1 = Echelon::new();
    insert_all(&mut e1, &reg, &b1)?;
    r.check("type_one_rank", e1.rank());
    let mut both = b1.clone();
    both.extend(b2.iter().cloned());
    let mut e12 = Echelon::new();
    insert_all(&mut e12, &reg, &both)?;
    r.check("boundary_rank", e12.rank());

    insert_all(&mut ech, &reg, &b2)?;
    r.check("residual_after_type_two", six.diagrams.len() - ech.rank());
    cert.push_str(&matrix_section("type two boundaries", &reg, &b2, &ech.pivots())?);
    insert_all(&mut ech, &reg, &b1)?;
    r.check("residual_after_type_one", six.diagrams.len() - ech.rank());
    cert.push_str(&matrix_section("type one boundaries", &reg, &b1, &ech.pivots())?);

    // a cycle with nonzero trace: (G5,F5) plus a traceless correction
    let g5 = build_gk(5)?.normalize();
    let target = boundary_image(&g5)?.scaled(&q(-1));
    let mut families = vec![("type one and two", [six.type_one.clone(), six.type_two.clone()].concat())];
    let mut found = None;
    for attempt in 0..2 {
        if attempt == 1 {
            families.push(("traceless line removals", six.line_removal_family()?));
        }
        let (label, family) = families.last().unwrap();
        let mut span = boundaries(family);
        span.extend(six.sliding.iter().cloned());
        if let Some(sol) = solve_membership(&span, &target) {
            found = Some((*label, family.clone(), sol));
            break;
        }
    }
    match found {
        None => {
            r.check("mu", "no traceless correction found");
        }
        Some((label, family, sol)) => {
            r.value("correction_family", label);
            let mut z = g5.clone();
            for (g, c) in family.iter().zip(&sol) {
                z.add_scaled(&g.graph.normalize(), c);
            }
            let cz = boundary_image(&z)?;
            r.value("cycle_check", if sliding_nf.is_zero(&cz) { "0" } else { "nonzero" });
            r.check("mu", trace::mu(&z, &theta(5))?);
        }
    }
    r.elapsed = Some(t.elapsed());
    Ok(Verification { report: r, certificate: cert })
}

/// The top rank-6 quotient modulo boundaries of traceless generators.
pub fn verify_h9() -> Result<Verification> {
    let t = Instant::now();
    let mut r = Report::new("h9");
    let mut cert = String::new();
    let six = RankSix::new()?;
    let reg = six.registry();
    let mut ech = Echelon::new();
    insert_all(&mut ech, &reg, &six.sliding)?;
    r.check("quotient_without_relations", six.diagrams.len() - ech.rank());
    insert_all(&mut ech, &reg, &boundaries(&six.type_two))?;
    r.check("residual_after_type_two", six.diagrams.len() - ech.rank());
    insert_all(&mut ech, &reg, &boundaries(&six.type_one))?;
    r.value("residual_after_type_one", six.diagrams.len() - ech.rank());
    r.note("the type-one family alone leaves this residual; see mu5.type_one_form");
    let family = six.line_removal_family()?;
    r.value("traceless_line_removals", family.len());
    let fb = boundaries(&family);
    insert_all(&mut ech, &reg, &fb)?;
    r.check("top_quotient", six.diagrams.len() - ech.rank());
    cert.push_str(&matrix_section("sliding relations", &reg, &six.sliding, &[])?);
    cert.push_str(&matrix_section("traceless line-removal boundaries", &reg, &fb, &ech.pivots())?);
    r.elapsed = Some(t.elapsed());
    Ok(Verification { report: r, certificate: cert })
}
