//! Corpus data model: geocoded institutions, publications with per-author
//! affiliation lists and citation edges, plus the indexes every downstream
//! stage reads.
//!
//! A corpus is immutable once built. All construction funnels through
//! [`Corpus::build`], which validates the record set and derives the indexes;
//! [`load_corpus`] reads the on-disk jsonl format and [`generate_synthetic`]
//! produces seeded corpora with planted dynamics.

mod geo;
mod load;
mod synth;

pub use geo::{haversine_km, GeoPoint, EARTH_RADIUS_KM};
pub use load::{load_corpus, write_corpus};
pub use synth::{generate_synthetic, GroundTruth, ScientistTruth, SynthConfig};

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A geocoded research institution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Institution {
    pub id: String,
    pub name: String,
    pub lat: f64,
    pub lon: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub region: Option<String>,
}

impl Institution {
    /// Coordinates as a validated point. Only call on institutions that have
    /// passed corpus validation.
    pub fn point(&self) -> GeoPoint {
        GeoPoint::new(self.lat, self.lon).expect("validated at corpus build")
    }
}

/// One publication record. `affils` is parallel to `authors`; the first entry
/// of each per-author list is that author's main affiliation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Publication {
    pub id: String,
    pub year: i32,
    pub authors: Vec<String>,
    pub affils: Vec<Vec<String>>,
    pub cited: Vec<String>,
}

macro_rules! dense_id {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(pub u32);

        impl $name {
            #[inline]
            pub fn idx(self) -> usize {
                self.0 as usize
            }
        }
    };
}

dense_id!(
    /// Dense index of an institution (position in id-sorted order).
    InstId
);
dense_id!(
    /// Dense index of a scientist (position in id-sorted order).
    SciId
);
dense_id!(
    /// Dense index of a publication (position in (year, id)-sorted order).
    PubId
);

/// Dense mirror of a publication used by the numeric stages.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct DensePub {
    pub year: i32,
    pub authors: Vec<SciId>,
    /// Main affiliation (first listed) per author, parallel to `authors`.
    pub mains: Vec<InstId>,
    pub cited: Vec<PubId>,
}

/// Errors from corpus loading, validation and synthesis.
#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{file}:{line}: malformed record: {msg}")]
    Malformed {
        file: String,
        line: usize,
        msg: String,
    },
    #[error("duplicate institution id `{0}`")]
    DuplicateInstitution(String),
    #[error("duplicate publication id `{0}`")]
    DuplicatePublication(String),
    #[error("institution `{id}`: coordinates ({lat}, {lon}) out of bounds")]
    CoordinatesOutOfBounds { id: String, lat: f64, lon: f64 },
    #[error("publication `{pub_id}` references unknown institution `{inst}`")]
    UnresolvedInstitution { pub_id: String, inst: String },
    #[error("publication `{pub_id}` cites unknown publication `{cited}`")]
    DanglingCitation { pub_id: String, cited: String },
    #[error("publication `{pub_id}` cites itself")]
    SelfCitation { pub_id: String },
    #[error("publication `{pub_id}`: {msg}")]
    InvalidPublication { pub_id: String, msg: String },
    #[error("corpus year span {0}..={1} exceeds the supported 1000-year range")]
    YearSpanTooLarge(i32, i32),
    #[error("invalid synthetic config: {0}")]
    InvalidConfig(String),
    #[error("index inconsistency: {0}")]
    IndexMismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Immutable publication corpus with derived indexes.
///
/// Institutions are stored in id-sorted order, publications in
/// (year, id)-sorted order; the dense [`InstId`]/[`SciId`]/[`PubId`] handles
/// are positions in those orders. Safe to share read-only across threads.
#[derive(Debug)]
pub struct Corpus {
    institutions: Vec<Institution>,
    publications: Vec<Publication>,
    dense: Vec<DensePub>,
    scientists: Vec<String>,
    inst_by_id: HashMap<String, InstId>,
    sci_by_id: HashMap<String, SciId>,
    /// Per scientist: publication ids sorted by (year, publication id).
    by_scientist: Vec<Vec<PubId>>,
    /// Per institution, per year offset: scientists with at least one paper
    /// main-affiliated there that year (sorted, deduplicated).
    by_institution: Vec<Vec<Vec<SciId>>>,
    /// Per publication: publications citing it (sorted).
    citations_of: Vec<Vec<PubId>>,
    /// Per scientist, per year offset: papers authored that year.
    pubs_per_year: Vec<Vec<u32>>,
    /// Per scientist, per year offset: citation edges received from papers
    /// published that year (targets may be any of the scientist's papers).
    cites_per_year: Vec<Vec<u32>>,
    first_year: Vec<i32>,
    last_year: Vec<i32>,
    /// Per institution: distinct scientists ever main-affiliated there.
    lifetime_size: Vec<u32>,
    year_min: i32,
    year_max: i32,
}

impl Corpus {
    /// Validate a record set and build every index.
    pub fn build(
        mut institutions: Vec<Institution>,
        mut publications: Vec<Publication>,
    ) -> Result<Self, CorpusError> {
        institutions.sort_by(|a, b| a.id.cmp(&b.id));
        for w in institutions.windows(2) {
            if w[0].id == w[1].id {
                return Err(CorpusError::DuplicateInstitution(w[0].id.clone()));
            }
        }
        for inst in &institutions {
            if GeoPoint::new(inst.lat, inst.lon).is_err() {
                return Err(CorpusError::CoordinatesOutOfBounds {
                    id: inst.id.clone(),
                    lat: inst.lat,
                    lon: inst.lon,
                });
            }
        }
        let inst_by_id: HashMap<String, InstId> = institutions
            .iter()
            .enumerate()
            .map(|(i, inst)| (inst.id.clone(), InstId(i as u32)))
            .collect();

        publications.sort_by(|a, b| (a.year, &a.id).cmp(&(b.year, &b.id)));
        for w in publications.windows(2) {
            if w[0].id == w[1].id {
                return Err(CorpusError::DuplicatePublication(w[0].id.clone()));
            }
        }
        let mut pub_by_id: HashMap<&str, PubId> = HashMap::with_capacity(publications.len());
        for (i, p) in publications.iter().enumerate() {
            if pub_by_id.insert(&p.id, PubId(i as u32)).is_some() {
                return Err(CorpusError::DuplicatePublication(p.id.clone()));
            }
        }

        let (year_min, year_max) = match publications.as_slice() {
            [] => (0, 0),
            pubs => (pubs[0].year, pubs[pubs.len() - 1].year),
        };
        if year_max - year_min > 1000 {
            return Err(CorpusError::YearSpanTooLarge(year_min, year_max));
        }
        let n_years = (year_max - year_min + 1) as usize;

        // Scientist universe, id-sorted.
        let mut scientists: Vec<String> = publications
            .iter()
            .flat_map(|p| p.authors.iter().cloned())
            .collect();
        scientists.sort();
        scientists.dedup();
        let sci_by_id: HashMap<String, SciId> = scientists
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), SciId(i as u32)))
            .collect();

        // Validate publications and build the dense mirror.
        let mut dense = Vec::with_capacity(publications.len());
        for p in &publications {
            if p.authors.is_empty() {
                return Err(CorpusError::InvalidPublication {
                    pub_id: p.id.clone(),
                    msg: "no authors".into(),
                });
            }
            if p.affils.len() != p.authors.len() {
                return Err(CorpusError::InvalidPublication {
                    pub_id: p.id.clone(),
                    msg: format!(
                        "{} authors but {} affiliation lists",
                        p.authors.len(),
                        p.affils.len()
                    ),
                });
            }
            let mut mains = Vec::with_capacity(p.authors.len());
            for (author, affs) in p.authors.iter().zip(&p.affils) {
                let Some(main) = affs.first() else {
                    return Err(CorpusError::InvalidPublication {
                        pub_id: p.id.clone(),
                        msg: format!("empty affiliation list for author `{author}`"),
                    });
                };
                for a in affs {
                    if !inst_by_id.contains_key(a) {
                        return Err(CorpusError::UnresolvedInstitution {
                            pub_id: p.id.clone(),
                            inst: a.clone(),
                        });
                    }
                }
                mains.push(inst_by_id[main]);
            }
            let mut cited = Vec::with_capacity(p.cited.len());
            for c in &p.cited {
                if c == &p.id {
                    return Err(CorpusError::SelfCitation { pub_id: p.id.clone() });
                }
                match pub_by_id.get(c.as_str()) {
                    Some(&id) => cited.push(id),
                    None => {
                        return Err(CorpusError::DanglingCitation {
                            pub_id: p.id.clone(),
                            cited: c.clone(),
                        })
                    }
                }
            }
            dense.push(DensePub {
                year: p.year,
                authors: p.authors.iter().map(|a| sci_by_id[a]).collect(),
                mains,
                cited,
            });
        }

        let indexes = Indexes::scan(&dense, scientists.len(), institutions.len(), year_min, n_years);

        Ok(Corpus {
            institutions,
            publications,
            dense,
            scientists,
            inst_by_id,
            sci_by_id,
            by_scientist: indexes.by_scientist,
            by_institution: indexes.by_institution,
            citations_of: indexes.citations_of,
            pubs_per_year: indexes.pubs_per_year,
            cites_per_year: indexes.cites_per_year,
            first_year: indexes.first_year,
            last_year: indexes.last_year,
            lifetime_size: indexes.lifetime_size,
            year_min,
            year_max,
        })
    }

    /// Re-derive every index from the publication set and compare against the
    /// stored ones.
    pub fn validate(&self) -> Result<(), CorpusError> {
        let n_years = (self.year_max - self.year_min + 1) as usize;
        let fresh = Indexes::scan(
            &self.dense,
            self.scientists.len(),
            self.institutions.len(),
            self.year_min,
            n_years,
        );
        let checks: [(&str, bool); 7] = [
            ("by_scientist", fresh.by_scientist == self.by_scientist),
            ("by_institution", fresh.by_institution == self.by_institution),
            ("citations_of", fresh.citations_of == self.citations_of),
            ("pubs_per_year", fresh.pubs_per_year == self.pubs_per_year),
            ("cites_per_year", fresh.cites_per_year == self.cites_per_year),
            (
                "career spans",
                fresh.first_year == self.first_year && fresh.last_year == self.last_year,
            ),
            ("lifetime_size", fresh.lifetime_size == self.lifetime_size),
        ];
        for (name, ok) in checks {
            if !ok {
                return Err(CorpusError::IndexMismatch(name.into()));
            }
        }
        for pubs in &self.by_scientist {
            let ordered = pubs.windows(2).all(|w| {
                let (a, b) = (&self.publications[w[0].idx()], &self.publications[w[1].idx()]);
                (a.year, &a.id) < (b.year, &b.id)
            });
            if !ordered {
                return Err(CorpusError::IndexMismatch(
                    "publications per scientist not (year, id)-ordered".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn institutions(&self) -> &[Institution] {
        &self.institutions
    }

    pub fn publications(&self) -> &[Publication] {
        &self.publications
    }

    pub fn n_institutions(&self) -> usize {
        self.institutions.len()
    }

    pub fn n_scientists(&self) -> usize {
        self.scientists.len()
    }

    /// Scientist ids in dense (sorted) order.
    pub fn scientists(&self) -> &[String] {
        &self.scientists
    }

    pub fn institution(&self, id: InstId) -> &Institution {
        &self.institutions[id.idx()]
    }

    pub fn scientist(&self, id: SciId) -> &str {
        &self.scientists[id.idx()]
    }

    pub fn inst_id(&self, id: &str) -> Option<InstId> {
        self.inst_by_id.get(id).copied()
    }

    pub fn sci_id(&self, id: &str) -> Option<SciId> {
        self.sci_by_id.get(id).copied()
    }

    /// Publication ids of a scientist, sorted by (year, publication id).
    pub fn publications_of(&self, sci: SciId) -> &[PubId] {
        &self.by_scientist[sci.idx()]
    }

    pub fn publication(&self, id: PubId) -> &Publication {
        &self.publications[id.idx()]
    }

    /// Publications citing `id`.
    pub fn citing(&self, id: PubId) -> &[PubId] {
        &self.citations_of[id.idx()]
    }

    pub(crate) fn dense_pub(&self, id: PubId) -> &DensePub {
        &self.dense[id.idx()]
    }

    /// Inclusive year range covered by the publication set.
    pub fn year_range(&self) -> (i32, i32) {
        (self.year_min, self.year_max)
    }

    /// Year of a scientist's first publication.
    pub fn first_active_year(&self, sci: SciId) -> i32 {
        self.first_year[sci.idx()]
    }

    /// Year of a scientist's last publication.
    pub fn last_active_year(&self, sci: SciId) -> i32 {
        self.last_year[sci.idx()]
    }

    /// Distinct scientists ever main-affiliated at an institution.
    pub fn lifetime_size(&self, inst: InstId) -> u32 {
        self.lifetime_size[inst.idx()]
    }

    fn year_offset(&self, year: i32) -> Option<usize> {
        (self.year_min..=self.year_max)
            .contains(&year)
            .then(|| (year - self.year_min) as usize)
    }

    /// Papers authored by `sci` in the window of `h` calendar years ending at
    /// and including `t`.
    pub fn window_publications(&self, sci: SciId, t: i32, h: u32) -> u32 {
        self.window_sum(&self.pubs_per_year[sci.idx()], t, h)
    }

    /// Citation edges received by `sci` (targets are any of their papers) from
    /// citing papers published within the window.
    pub fn window_citations(&self, sci: SciId, t: i32, h: u32) -> u32 {
        self.window_sum(&self.cites_per_year[sci.idx()], t, h)
    }

    fn window_sum(&self, per_year: &[u32], t: i32, h: u32) -> u32 {
        let lo = t - h as i32 + 1;
        (lo..=t)
            .filter_map(|y| self.year_offset(y))
            .map(|off| per_year[off])
            .sum()
    }

    /// Scientists with at least one paper main-affiliated at `inst` that year
    /// (sorted, deduplicated).
    pub fn active_at(&self, inst: InstId, year: i32) -> &[SciId] {
        match self.year_offset(year) {
            Some(off) => &self.by_institution[inst.idx()][off],
            None => &[],
        }
    }

    /// Distinct scientists with at least one paper main-affiliated at `inst`
    /// within the window (sorted).
    pub fn members_in_window(&self, inst: InstId, t: i32, h: u32) -> Vec<SciId> {
        let lo = t - h as i32 + 1;
        let mut members: Vec<SciId> = (lo..=t)
            .flat_map(|y| self.active_at(inst, y).iter().copied())
            .collect();
        members.sort_unstable();
        members.dedup();
        members
    }

    /// Iterate a scientist's publications with year in the window.
    pub(crate) fn window_pubs_of(
        &self,
        sci: SciId,
        t: i32,
        h: u32,
    ) -> impl Iterator<Item = PubId> + '_ {
        let lo = t - h as i32 + 1;
        let pubs = &self.by_scientist[sci.idx()];
        // Publications are (year, id)-sorted, so the window is contiguous.
        let start = pubs.partition_point(|&p| self.dense[p.idx()].year < lo);
        pubs[start..]
            .iter()
            .copied()
            .take_while(move |&p| self.dense[p.idx()].year <= t)
    }
}

/// Derived index set, built by a full scan over the dense publication mirror.
struct Indexes {
    by_scientist: Vec<Vec<PubId>>,
    by_institution: Vec<Vec<Vec<SciId>>>,
    citations_of: Vec<Vec<PubId>>,
    pubs_per_year: Vec<Vec<u32>>,
    cites_per_year: Vec<Vec<u32>>,
    first_year: Vec<i32>,
    last_year: Vec<i32>,
    lifetime_size: Vec<u32>,
}

impl Indexes {
    fn scan(
        dense: &[DensePub],
        n_sci: usize,
        n_inst: usize,
        year_min: i32,
        n_years: usize,
    ) -> Self {
        let mut by_scientist = vec![Vec::new(); n_sci];
        let mut by_institution = vec![vec![Vec::new(); n_years]; n_inst];
        let mut citations_of = vec![Vec::new(); dense.len()];
        let mut pubs_per_year = vec![vec![0u32; n_years]; n_sci];
        let mut cites_per_year = vec![vec![0u32; n_years]; n_sci];
        let mut first_year = vec![i32::MAX; n_sci];
        let mut last_year = vec![i32::MIN; n_sci];

        for (i, p) in dense.iter().enumerate() {
            let pid = PubId(i as u32);
            let off = (p.year - year_min) as usize;
            for (&a, &m) in p.authors.iter().zip(&p.mains) {
                by_scientist[a.idx()].push(pid);
                by_institution[m.idx()][off].push(a);
                pubs_per_year[a.idx()][off] += 1;
                first_year[a.idx()] = first_year[a.idx()].min(p.year);
                last_year[a.idx()] = last_year[a.idx()].max(p.year);
            }
            for &c in &p.cited {
                citations_of[c.idx()].push(pid);
                for &target_author in &dense[c.idx()].authors {
                    cites_per_year[target_author.idx()][off] += 1;
                }
            }
        }
        for per_year in &mut by_institution {
            for list in per_year.iter_mut() {
                list.sort_unstable();
                list.dedup();
            }
        }
        let lifetime_size = by_institution
            .iter()
            .map(|per_year| {
                let mut all: Vec<SciId> = per_year.iter().flatten().copied().collect();
                all.sort_unstable();
                all.dedup();
                all.len() as u32
            })
            .collect();
        // `dense` is (year, id)-sorted, so per-scientist and citing lists come
        // out sorted already; keep the sort as a guarantee, not an assumption.
        for list in &mut citations_of {
            list.sort_unstable();
        }
        Indexes {
            by_scientist,
            by_institution,
            citations_of,
            pubs_per_year,
            cites_per_year,
            first_year,
            last_year,
            lifetime_size,
        }
    }
}
