//! Human-readable renderings of a [`Report`].
//!
//! Rational matrices and vectors are printed as `1/G * (numerators)` whenever
//! one factored denominator `G` clears every entry: the generic denominator
//! `prod_s (1-v^-2s)^k_s` of the weight for `Psi` and `D`, and `(1-v^-2)^n`
//! for `H`.

use std::fmt::Write as _;

use qcanon::flags::ZeroPattern;
use qcanon::laurent::IntLaurent;
use qcanon::matrix::Matrix;
use qcanon::pairing::generic_denominator_factors;
use qcanon::ratfunc::{cyclotomic_product, RatFunc};

use crate::config::Format;
use crate::report::Report;

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report is serializable");
            s.push('\n');
            s
        }
        Format::Pretty => Renderer::<Pretty>::new(report).run(),
        Format::Latex => Renderer::<Latex>::new(report).run(),
    }
}

/// Factors `(s, k)` of `prod_s (1 - v^-2s)^k`.
pub type Factors = [(u32, u32)];

/// `entries * G` as Laurent polynomials, if `G` clears all of them.
pub fn clear_denominator(entries: &[RatFunc], factors: &Factors) -> Option<Vec<IntLaurent>> {
    let g = RatFunc::from(cyclotomic_product(factors));
    entries.iter().map(|x| (x * &g).to_laurent().ok()).collect()
}

trait Style {
    const LATEX: bool;
    /// The scalar `1/G` for a rendered denominator `G`.
    fn reciprocal(den: &str) -> String;
    fn poly(p: &IntLaurent) -> String;
    fn rat(r: &RatFunc) -> String;
    fn denominator(factors: &Factors) -> String;
    fn heading(out: &mut String, title: &str);
    /// `prefix` is an optional scalar factor such as `1/G`.
    fn matrix(out: &mut String, name: &str, prefix: Option<&str>, cells: &[Vec<String>]);
    fn pattern(p: &ZeroPattern) -> String;
    fn comment(out: &mut String, line: &str);
}

struct Pretty;
struct Latex;

impl Style for Pretty {
    const LATEX: bool = false;

    fn reciprocal(den: &str) -> String {
        format!("1/({den})")
    }

    fn poly(p: &IntLaurent) -> String {
        p.to_string()
    }

    fn rat(r: &RatFunc) -> String {
        r.to_string()
    }

    fn denominator(factors: &Factors) -> String {
        factors
            .iter()
            .filter(|&&(_, k)| k > 0)
            .map(|&(s, k)| {
                let base = format!("(1-v^-{})", 2 * s);
                if k == 1 {
                    base
                } else {
                    format!("{base}^{k}")
                }
            })
            .collect()
    }

    fn heading(out: &mut String, title: &str) {
        let _ = writeln!(out, "\n{title}");
    }

    fn matrix(out: &mut String, name: &str, prefix: Option<&str>, cells: &[Vec<String>]) {
        match prefix {
            Some(p) => {
                let _ = writeln!(out, "\n{name} = {p} *");
            }
            None => {
                let _ = writeln!(out, "\n{name} =");
            }
        }
        let ncols = cells.first().map_or(0, Vec::len);
        let widths: Vec<usize> = (0..ncols)
            .map(|j| cells.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
            .collect();
        for row in cells {
            let padded: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:<w$}"))
                .collect();
            let _ = writeln!(out, "  [ {} ]", padded.join("  ").trim_end());
        }
    }

    fn pattern(p: &ZeroPattern) -> String {
        p.to_string()
    }

    fn comment(out: &mut String, line: &str) {
        let _ = writeln!(out, "{line}");
    }
}

impl Style for Latex {
    const LATEX: bool = true;

    fn reciprocal(den: &str) -> String {
        format!("\\frac{{1}}{{{den}}}")
    }

    fn poly(p: &IntLaurent) -> String {
        p.to_latex()
    }

    fn rat(r: &RatFunc) -> String {
        r.to_latex()
    }

    fn denominator(factors: &Factors) -> String {
        factors
            .iter()
            .filter(|&&(_, k)| k > 0)
            .map(|&(s, k)| {
                let base = format!("(1-v^{{-{}}})", 2 * s);
                if k == 1 {
                    base
                } else {
                    format!("{base}^{{{k}}}")
                }
            })
            .collect()
    }

    fn heading(out: &mut String, title: &str) {
        let _ = writeln!(out, "\n% {title}");
    }

    fn matrix(out: &mut String, name: &str, prefix: Option<&str>, cells: &[Vec<String>]) {
        let rows: Vec<String> = cells.iter().map(|r| r.join(" & ")).collect();
        let _ = writeln!(
            out,
            "\\[\n{name} = {}\\begin{{pmatrix}}\n{}\n\\end{{pmatrix}}\n\\]",
            prefix.map(|p| format!("{p} ")).unwrap_or_default(),
            rows.join(" \\\\\n")
        );
    }

    fn pattern(p: &ZeroPattern) -> String {
        let arrows: Vec<String> = p
            .to_matrices()
            .iter()
            .map(|m| {
                let rows: Vec<String> = m
                    .iter()
                    .map(|r| r.iter().map(|&b| if b { "*" } else { "0" }).collect::<Vec<_>>().join(" & "))
                    .collect();
                format!("\\begin{{smallmatrix}} {} \\end{{smallmatrix}}", rows.join(" \\\\ "))
            })
            .collect();
        format!("\\left( {} \\right)", arrows.join(", "))
    }

    fn comment(out: &mut String, line: &str) {
        let _ = writeln!(out, "% {line}");
    }
}

struct Renderer<'a, S> {
    report: &'a Report,
    out: String,
    style: std::marker::PhantomData<S>,
}

impl<'a, S: Style> Renderer<'a, S> {
    fn new(report: &'a Report) -> Self {
        Self {
            report,
            out: String::new(),
            style: std::marker::PhantomData,
        }
    }

    fn run(mut self) -> String {
        let r = self.report;
        let roots: Vec<&str> = r.root_order.iter().map(|x| x.label.as_str()).collect();
        S::comment(&mut self.out, &format!("{} for weight {}", r.command, r.dimvec));
        S::comment(&mut self.out, &format!("root order: {}", roots.join(" < ")));
        S::comment(&mut self.out, "partitions:");
        for p in &r.partitions {
            S::comment(&mut self.out, &format!("  c{} = {}", p.index, p.partition));
        }
        self.sections();
        S::heading(&mut self.out, "diagnostics");
        if r.diagnostics.is_empty() {
            S::comment(&mut self.out, "  none");
        }
        for d in &r.diagnostics {
            S::comment(&mut self.out, &format!("  {d}"));
        }
        self.out
    }

    fn sections(&mut self) {
        let r = self.report;
        let generic = generic_denominator_factors(&r.dimvec);
        if let Some(kp) = &r.kp {
            S::heading(&mut self.out, "monomials (word; exponents)");
            for m in kp {
                S::comment(&mut self.out, &format!("  c{}: {:?}; {:?}", m.index, m.word, m.exponents));
            }
        }
        if let Some(o) = &r.orbits {
            S::heading(&mut self.out, "orbit dimensions");
            self.indexed(o.iter().map(|x| x.to_string()));
        }
        if let Some(ps) = &r.patterns {
            S::heading(&mut self.out, "coordinate subspaces R_c");
            self.indexed(ps.iter().map(S::pattern));
        }
        if let Some(m) = &r.psi {
            self.rat_matrix("\\Psi", "Psi", m, &generic);
        }
        if let Some(m) = &r.l {
            self.poly_matrix("L", m);
        }
        if let Some(d) = &r.d {
            let diag = Matrix::from_fn(d.len(), d.len(), |i, j| if i == j { d[i].clone() } else { RatFunc::zero() });
            self.rat_matrix("D", "D", &diag, &generic);
        }
        if let Some(m) = &r.p {
            self.poly_matrix("P", m);
        }
        if let Some(m) = &r.q {
            self.poly_matrix("Q", m);
        }
        if let Some(m) = &r.multiplicities {
            S::heading(&mut self.out, "[M_c : L_c'] (row c, column c')");
            let cells = m.rows().iter().map(|row| row.iter().map(|x| x.to_string()).collect()).collect::<Vec<_>>();
            S::matrix(&mut self.out, "M", None, &cells);
        }
        if let Some(h) = &r.h {
            let n = r.dimvec.total() as u32;
            let col = Matrix::from_fn(h.len(), 1, |i, _| h[i].clone());
            self.rat_matrix("H", "H", &col, &[(1, n)]);
        }
        if let Some(f) = &r.f {
            let cells = f.iter().map(|x| vec![S::poly(x)]).collect::<Vec<_>>();
            S::matrix(&mut self.out, "F", None, &cells);
        }
        if let Some(d) = &r.dims {
            S::heading(&mut self.out, "simple module dimensions");
            self.indexed(d.iter().map(|x| x.to_string()));
        }
        if let Some(rows) = &r.intersections {
            S::heading(&mut self.out, "w, l(w), R_v cap wn");
            for row in rows {
                S::comment(
                    &mut self.out,
                    &format!("  {:<10} {:>2}  {}", row.cycles, row.length, S::pattern(&row.pattern)),
                );
            }
        }
    }

    fn indexed(&mut self, items: impl Iterator<Item = String>) {
        for (i, x) in items.enumerate() {
            S::comment(&mut self.out, &format!("  c{}: {x}", i + 1));
        }
    }

    fn poly_matrix(&mut self, name: &str, m: &Matrix<IntLaurent>) {
        let cells = m.rows().iter().map(|r| r.iter().map(S::poly).collect()).collect::<Vec<_>>();
        S::matrix(&mut self.out, name, None, &cells);
    }

    fn rat_matrix(&mut self, latex_name: &str, plain_name: &str, m: &Matrix<RatFunc>, factors: &Factors) {
        let name = if S::LATEX { latex_name } else { plain_name };
        let flat: Vec<RatFunc> = m.rows().iter().flatten().cloned().collect();
        let den = S::denominator(factors);
        match clear_denominator(&flat, factors) {
            Some(nums) if !den.is_empty() => {
                let cells = nums.chunks(m.ncols().max(1)).map(|r| r.iter().map(S::poly).collect()).collect::<Vec<_>>();
                S::matrix(&mut self.out, name, Some(&S::reciprocal(&den)), &cells);
            }
            _ => {
                let cells = m.rows().iter().map(|r| r.iter().map(S::rat).collect()).collect::<Vec<_>>();
                S::matrix(&mut self.out, name, None, &cells);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{Command, Emit, RunConfig};
    use crate::report::build_report;

    fn report(cmd: Command, v: &str, emit: &[Emit]) -> Report {
        let cfg = RunConfig::new(cmd, v.parse().unwrap(), Some(emit.to_vec()), Format::Pretty).unwrap();
        build_report(&cfg).unwrap()
    }

    #[test]
    fn denominators_are_factored() {
        assert_eq!(Pretty::denominator(&[(1, 3), (2, 1)]), "(1-v^-2)^3(1-v^-4)");
        assert_eq!(Latex::denominator(&[(1, 2), (2, 2)]), "(1-v^{-2})^{2}(1-v^{-4})^{2}");
    }

    #[test]
    fn pretty_psi_over_generic_denominator() {
        let text = render(&report(Command::Canbase, "2,2", &[Emit::Psi]), Format::Pretty);
        assert!(text.contains("Psi = 1/((1-v^-2)^2(1-v^-4)^2) *"), "{text}");
        assert!(text.contains("[ 1 + 2v^-2 + v^-4") || text.contains("1 + 2v^-2 + v^-4"), "{text}");
        assert!(text.contains("c2 = (1,1,1)"), "{text}");
    }

    #[test]
    fn latex_uses_pmatrix_and_frac() {
        let text = render(&report(Command::Hecke, "1,2,1", &[Emit::H, Emit::Patterns]), Format::Latex);
        assert!(text.contains("H = \\frac{1}{(1-v^{-2})^{4}} \\begin{pmatrix}"), "{text}");
        assert!(text.contains("v^{11}"), "{text}");
        assert!(text.contains("smallmatrix"), "{text}");
    }

    #[test]
    fn falls_back_to_fractions_when_denominator_does_not_clear() {
        let m = Matrix::from_rows(vec![vec!["1/(1-v^-6)".parse::<RatFunc>().unwrap()]]).unwrap();
        let r = report(Command::Canbase, "1", &[Emit::Orbits]);
        let mut out = Renderer::<Pretty>::new(&r);
        out.rat_matrix("X", "X", &m, &[(1, 1)]);
        assert!(out.out.contains("X =\n"), "{}", out.out);
    }
}
