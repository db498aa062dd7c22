use std::fmt::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::center::{verify_center, CenterData};
use crate::field::FieldElement;
use crate::fusion::{parse_category, validate_category, FusionData};
use crate::report::Report;

use super::{read, run_compare, CatalogEntry, CatalogError, CenterSource, CompareRow, Pi1};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntrySpec {
    pub name: String,
    pub tri: PathBuf,
    pub link: PathBuf,
    pub pi1: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategorySpec {
    pub name: String,
    pub cat: PathBuf,
    pub center: CenterSource,
    /// For Vec_{Z/n}: n, enabling the group-count oracle.
    pub group: Option<u64>,
}

/// A suite: `entry NAME tri=F link=F pi1=G` and
/// `category NAME cat=F center=solve-vecG:N|product:F|file:F [group=N]` lines.
/// Relative paths are taken from the config file's directory.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuiteConfig {
    pub entries: Vec<EntrySpec>,
    pub categories: Vec<CategorySpec>,
}

pub fn parse_config(text: &str, dir: &Path) -> Result<SuiteConfig, CatalogError> {
    let mut cfg = SuiteConfig::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |msg: String| CatalogError::Config { line, msg };
        let l = raw.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        let mut words = l.split_whitespace();
        let kind = words.next().expect("non-empty");
        let name = words
            .next()
            .ok_or_else(|| err("missing name".into()))?
            .to_string();
        let mut fields = std::collections::BTreeMap::new();
        for w in words {
            let (k, v) = w
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value, got `{w}`")))?;
            if fields.insert(k, v).is_some() {
                return Err(err(format!("repeated `{k}`")));
            }
        }
        let mut take = |k: &str| {
            fields
                .remove(k)
                .ok_or_else(|| err(format!("missing `{k}`")))
        };
        match kind {
            "entry" => {
                let spec = EntrySpec {
                    name,
                    tri: dir.join(take("tri")?),
                    link: dir.join(take("link")?),
                    pi1: take("pi1")?.to_string(),
                };
                Pi1::parse(&spec.pi1)?;
                cfg.entries.push(spec);
            }
            "category" => {
                let cat = dir.join(take("cat")?);
                let center = take("center")?;
                let center = match center.split_once(':') {
                    Some(("solve-vecG", n)) => CenterSource::SolveVecG(
                        n.parse()
                            .map_err(|_| err(format!("bad group order `{n}`")))?,
                    ),
                    Some(("product", f)) => CenterSource::Product(dir.join(f)),
                    Some(("file", f)) => CenterSource::File(dir.join(f)),
                    _ => return Err(err(format!("unknown center source `{center}`"))),
                };
                let group = match fields.remove("group") {
                    Some(n) => Some(
                        n.parse()
                            .map_err(|_| err(format!("bad group order `{n}`")))?,
                    ),
                    None => None,
                };
                cfg.categories.push(CategorySpec {
                    name,
                    cat,
                    center,
                    group,
                });
            }
            other => return Err(err(format!("unknown line kind `{other}`"))),
        }
        if let Some(k) = fields.keys().next() {
            return Err(err(format!("unknown key `{k}`")));
        }
    }
    Ok(cfg)
}

/// The group-count oracle on one Vec_{Z/n} row.
#[derive(Debug, Clone)]
pub struct OracleRow {
    pub manifold: String,
    pub category: String,
    pub expected: FieldElement,
    pub tv: Option<FieldElement>,
}

#[derive(Debug, Clone, Default)]
pub struct SuiteReport {
    pub validations: Vec<(String, Report)>,
    pub oracles: Vec<OracleRow>,
    pub rows: Vec<CompareRow>,
}

fn value(v: &Option<FieldElement>, digits: Option<usize>) -> String {
    match (v, digits) {
        (None, _) => "none".into(),
        (Some(v), None) => v.to_string().replace(' ', ""),
        (Some(v), Some(d)) => v.approx_string(d).replace(' ', ""),
    }
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.validations.iter().all(|(_, r)| r.all_passed())
            && self
                .oracles
                .iter()
                .all(|o| o.tv.as_ref() == Some(&o.expected))
            && self.rows.iter().all(CompareRow::equal)
    }

    /// Line-oriented key=value report. Only `time_ms` fields vary between runs.
    pub fn to_text(&self, digits: Option<usize>) -> String {
        let mut s = String::new();
        for (target, r) in &self.validations {
            for c in &r.checks {
                let status = if c.passed { "pass" } else { "FAIL" };
                write!(
                    s,
                    "validation target={target} check={} status={status}",
                    c.name
                )
                .unwrap();
                if let Some(w) = &c.witness {
                    write!(s, " witness={}", w.replace(' ', "_")).unwrap();
                }
                s.push('\n');
            }
        }
        for o in &self.oracles {
            let equal = o.tv.as_ref() == Some(&o.expected);
            writeln!(
                s,
                "oracle manifold={} category={} expected={} tv={} equal={equal}",
                o.manifold,
                o.category,
                value(&Some(o.expected.clone()), digits),
                value(&o.tv, digits)
            )
            .unwrap();
        }
        for r in &self.rows {
            write!(
                s,
                "row manifold={} category={} tv={} rt={} equal={}",
                r.manifold,
                r.category,
                value(&r.tv, digits),
                value(&r.rt, digits),
                r.equal()
            )
            .unwrap();
            if let Some(e) = &r.error {
                write!(s, " error={}", e.replace(' ', "_")).unwrap();
            }
            writeln!(s, " time_ms={}", r.elapsed.as_millis()).unwrap();
        }
        let failed = self
            .validations
            .iter()
            .filter(|(_, r)| !r.all_passed())
            .count();
        writeln!(
            s,
            "summary rows={} equal={} validations_failed={failed} passed={}",
            self.rows.len(),
            self.rows.iter().filter(|r| r.equal()).count(),
            self.passed()
        )
        .unwrap();
        s
    }
}

struct Prepared {
    name: String,
    cat: FusionData,
    center: CenterData,
}

/// Runs every (entry, category) comparison. Categories or centers that fail
/// validation are reported and their rows skipped. Rows run on up to `threads`
/// workers and are reported in config order.
pub fn run_suite(cfg: &SuiteConfig, threads: usize) -> Result<SuiteReport, CatalogError> {
    let mut report = SuiteReport::default();
    let entries = cfg
        .entries
        .iter()
        .map(|e| CatalogEntry::load(&e.name, &e.tri, &e.link, &e.pi1))
        .collect::<Result<Vec<_>, _>>()?;
    let mut prepared = Vec::new();
    for spec in &cfg.categories {
        let cat = parse_category(&read(&spec.cat)?).map_err(|source| CatalogError::Fusion {
            path: spec.cat.clone(),
            source,
        })?;
        let r = validate_category(&cat);
        let ok = r.all_passed();
        report
            .validations
            .push((format!("category:{}", spec.name), r));
        if !ok {
            continue;
        }
        let center = spec.center.build(Some(&cat))?;
        let r = verify_center(&center);
        let ok = r.all_passed();
        report
            .validations
            .push((format!("center:{}", spec.name), r));
        if ok {
            prepared.push((
                spec,
                Prepared {
                    name: spec.name.clone(),
                    cat,
                    center,
                },
            ));
        }
    }
    let jobs: Vec<(usize, usize)> = (0..prepared.len())
        .flat_map(|c| (0..entries.len()).map(move |e| (c, e)))
        .collect();
    let results: Mutex<Vec<Option<CompareRow>>> = Mutex::new(vec![None; jobs.len()]);
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..threads.max(1).min(jobs.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(c, e)) = jobs.get(i) else { break };
                let p = &prepared[c].1;
                let row = run_compare(&entries[e], &p.name, &p.cat, &p.center, 1);
                results.lock().expect("no panics while held")[i] = Some(row);
            });
        }
    });
    report.rows = results
        .into_inner()
        .expect("workers joined")
        .into_iter()
        .map(|r| r.expect("every job ran"))
        .collect();
    for ((c, e), row) in jobs.iter().zip(&report.rows) {
        if let Some(n) = prepared[*c].0.group {
            report.oracles.push(OracleRow {
                manifold: entries[*e].name.clone(),
                category: prepared[*c].1.name.clone(),
                expected: entries[*e].pi1.vec_zn_value(n),
                tv: row.tv.clone(),
            });
        }
    }
    Ok(report)
}

/// Reads and parses a config file.
pub fn load_config(path: &Path) -> Result<SuiteConfig, CatalogError> {
    let dir = path.parent().unwrap_or(Path::new("."));
    parse_config(&read(path)?, dir)
}
