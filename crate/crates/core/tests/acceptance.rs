//! Acceptance run: thirteen criteria, one PASS/FAIL line each. Exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use resforge::arith::{parse_elem, LocalField};
use resforge::extension::comm_symbol_scalar;
use resforge::symbols::power_residue_symbol;
use resforge::torsor::DetCtx;
use resforge::verify::{
    check_char_homomorphism, check_classical_det, check_cocycle_identity, check_det_paths,
    check_dim_additivity, check_exact_naturality, check_product_lemma, check_sign_lemma,
    check_steinberg, check_symbol_properties, check_theorem, check_three_way,
    check_transfer, check_trivialization_independence, check_zolotarev, PropertyResult,
    VerifyConfig,
};
use resforge::Result;

const SEED: u64 = 42;

fn field(p: u64, f: u32) -> LocalField {
    LocalField::new(p, f).expect("supported field")
}

fn cfg(p: u64, f: u32, samples: usize, vmax: i64) -> VerifyConfig {
    VerifyConfig {
        p,
        f,
        seed: SEED,
        samples,
        vmax,
        ..VerifyConfig::default()
    }
}

/// Tally of one criterion over several fields and properties.
struct Criterion {
    total: PropertyResult,
    /// Extra conditions (minimum case counts, spot values) that failed.
    unmet: Vec<String>,
}

impl Criterion {
    fn new(name: &str) -> Self {
        Criterion {
            total: PropertyResult::new(name),
            unmet: Vec::new(),
        }
    }

    /// Adds a property run, requiring at least `min_cases` evaluated cases.
    fn add(&mut self, label: &str, r: Result<PropertyResult>, min_cases: u64) {
        match r {
            Ok(r) => {
                if r.cases < min_cases {
                    self.unmet.push(format!("{label}: {} of {min_cases} cases", r.cases));
                }
                if !r.passed() {
                    self.unmet.push(format!(
                        "{label}: {} failures, first {}",
                        r.failures,
                        r.counterexample.clone().unwrap_or_default()
                    ));
                }
                self.total.absorb(r);
            }
            Err(e) => self.unmet.push(format!("{label}: {e}")),
        }
    }

    fn require(&mut self, what: &str, ok: bool) {
        if !ok {
            self.unmet.push(what.to_string());
        }
    }

    fn passed(&self) -> bool {
        self.unmet.is_empty() && self.total.passed()
    }
}

fn sweep_fields() -> [u64; 4] {
    [3, 5, 7, 13]
}

fn c1() -> Criterion {
    let mut c = Criterion::new("three-way agreement on the symbol sweep");
    for p in sweep_fields() {
        let lf = field(p, 1);
        c.add(&format!("p={p}"), check_three_way(&lf, &cfg(p, 1, 0, 2)), 1);
    }
    c
}

fn c2() -> Criterion {
    let mut c = Criterion::new("commutator symbol = unsigned tame formula");
    for p in sweep_fields() {
        let lf = field(p, 1);
        c.add(&format!("p={p}"), check_theorem(&lf, &cfg(p, 1, 0, 2)), 1);
    }
    // The two formulas differ by a sign exactly at {pi, pi} over Q_7.
    let lf = field(7, 1);
    let spot = (|| -> Result<bool> {
        let dc = DetCtx::new(lf.clone(), 2)?;
        let pi = parse_elem(&lf, "pi", 4)?;
        Ok(comm_symbol_scalar(&dc, &pi, &pi)?.is_one()
            && power_residue_symbol(&lf, &pi, &pi, 2)?.as_sign() == Some(-1))
    })();
    c.require("{pi, pi} = 1 while (pi, pi)_2 = -1 over Q_7", spot == Ok(true));
    c
}

fn c3() -> Criterion {
    let mut c = Criterion::new("Zolotarev sign = Euler criterion, odd p <= 31");
    let start = Instant::now();
    for p in [3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        let lf = field(p, 1);
        c.add(&format!("p={p}"), Ok(check_zolotarev(&lf)), p - 1);
        c.add(&format!("p={p} character"), Ok(check_char_homomorphism(&lf)), 1);
    }
    c.require("runs in under a second", start.elapsed().as_secs_f64() < 1.0);
    c
}

fn c4() -> Criterion {
    let mut c = Criterion::new("transfer: delta of multiplication = a^((q-1)/n)");
    for (p, f) in [(2, 2), (5, 1), (7, 1), (3, 2), (13, 1), (5, 2), (3, 3), (7, 2)] {
        let lf = field(p, f);
        let q = lf.q();
        c.add(&format!("q={q}"), Ok(check_transfer(&lf)), q - 1);
    }
    c
}

fn c5() -> Criterion {
    let mut c = Criterion::new("n = 2: permutation sign = delta");
    c.add("1000 automorphisms", Ok(check_sign_lemma(&cfg(7, 1, 1000, 2), 20)), 1000);
    c
}

fn c6() -> Criterion {
    let mut c = Criterion::new("product lemma: delta(f x id) = delta(f)");
    c.add("200 triples", Ok(check_product_lemma(&cfg(7, 1, 200, 2), 4, 5)), 200);
    c
}

fn c7() -> Criterion {
    let mut c = Criterion::new("determinant coherence: filtration = enumeration = classical");
    for (p, f) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1)] {
        let lf = field(p, f);
        let q = lf.q();
        c.add(&format!("q={q}"), check_det_paths(&lf, &cfg(p, f, 0, 2), 3, 50), 50);
    }
    for (p, f) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
        let lf = field(p, f);
        let q = lf.q();
        let gl2 = (q * q - 1) * (q * q - q);
        c.add(&format!("GL_2(F_{q})"), check_classical_det(&lf), gl2);
    }
    c
}

fn c8() -> Criterion {
    let mut c = Criterion::new("determinants multiply along exact sequences");
    for (p, f) in [(3, 1), (5, 1), (7, 1), (3, 2)] {
        let lf = field(p, f);
        c.add(&format!("q={}", lf.q()), check_exact_naturality(&lf, &cfg(p, f, 200, 2)), 200);
    }
    c
}

fn c9() -> Criterion {
    let mut c = Criterion::new("cocycle identity and commutator symbol laws");
    for p in [3, 5, 7] {
        let lf = field(p, 1);
        let vc = cfg(p, 1, 200, 2);
        let per_field = 200 * vc.ns(&lf).map_or(0, |ns| ns.len()) as u64;
        c.add(&format!("cocycle p={p}"), check_cocycle_identity(&lf, &vc), per_field);
        c.add(&format!("symbols p={p}"), check_symbol_properties(&lf, &vc), per_field);
    }
    c
}

fn c10() -> Criterion {
    let mut c = Criterion::new("orbit counts are additive on nested triples");
    for p in sweep_fields() {
        let lf = field(p, 1);
        c.add(&format!("p={p}"), Ok(check_dim_additivity(&lf, &cfg(p, 1, 200, 2))), 200);
    }
    c
}

fn c11() -> Criterion {
    let mut c = Criterion::new("commutator symbol is independent of base points");
    for p in [3, 5, 7] {
        let lf = field(p, 1);
        let vc = cfg(p, 1, 100, 2);
        let per_field = 100 * vc.ns(&lf).map_or(0, |ns| ns.len()) as u64;
        c.add(&format!("p={p}"), check_trivialization_independence(&lf, &vc), per_field);
    }
    c
}

fn c12() -> Criterion {
    let mut c = Criterion::new("Steinberg: (a, 1 - a)_n = 1");
    for (p, f) in [(3, 1), (5, 1), (7, 1), (13, 1), (3, 2)] {
        let lf = field(p, f);
        let vc = cfg(p, f, 0, 2);
        let per_field = 500 * vc.ns(&lf).map_or(0, |ns| ns.len()) as u64;
        c.add(&format!("q={}", lf.q()), check_steinberg(&lf, &vc, 500), per_field);
    }
    c
}

fn c13() -> Criterion {
    let mut c = Criterion::new("unramified smoke test: three-way agreement at q = 9");
    let lf = field(3, 2);
    for n in [2, 4, 8] {
        let vc = VerifyConfig {
            n: Some(n),
            ..cfg(3, 2, 0, 1)
        };
        c.add(&format!("n={n}"), check_three_way(&lf, &vc), 9 * 8 * 8);
    }
    c
}

fn main() -> ExitCode {
    let criteria: [fn() -> Criterion; 13] = [c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12, c13];
    let mut all = true;
    for (i, run) in criteria.iter().enumerate() {
        let start = Instant::now();
        let c = run();
        let ok = c.passed();
        all &= ok;
        println!(
            "[{}] criterion {:>2}: {} (cases {}, rejected {}, {:.2}s)",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            c.total.name,
            c.total.cases,
            c.total.rejected,
            start.elapsed().as_secs_f64()
        );
        for u in &c.unmet {
            println!("       {u}");
        }
    }
    println!("acceptance: {}", if all { "all criteria pass" } else { "FAILED" });
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
