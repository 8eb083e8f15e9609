//! Emotional profiles of semantic frames, random lexicon baselines and
//! z-scores, plus the flower plot data.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::affect::{antonym_emotions, AffectLexicon, AntonymMap, Emotion, EmotionSet};
use crate::cooccur::CooccurrenceNetwork;
use crate::error::{Error, Result};
use crate::graphan::SemanticFrame;

pub const DEFAULT_TRIALS: usize = 1000;
pub const DEFAULT_THRESHOLD: f64 = 1.96;

/// How words linked to a negation are counted.
#[derive(Debug, Clone, Default)]
pub struct NegationRule {
    /// Stems such as "no" and "not".
    pub negation_stems: BTreeSet<String>,
    /// Word-level antonyms; when a negated word has an entry, its antonym's
    /// emotions are added instead of the wheel opposites.
    pub antonyms: Option<AntonymMap>,
    /// Drop a negated word's own emotions, keeping only the added antonyms.
    pub suppress_negated: bool,
}

impl NegationRule {
    pub fn new(negation_stems: BTreeSet<String>) -> Self {
        NegationRule {
            negation_stems,
            ..NegationRule::default()
        }
    }
}

/// Raw counts behind an emotional profile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameEmotions {
    /// Frame members excluding the target.
    pub n: usize,
    /// m_i: members contributing emotion i (each at most once).
    pub counts: BTreeMap<Emotion, usize>,
    /// Members contributing at least one emotion.
    pub emotional_word_count: usize,
    /// Members adjacent to a negation in the full network.
    pub negated: Vec<String>,
}

impl FrameEmotions {
    /// r_i = m_i / N.
    pub fn fractions(&self) -> BTreeMap<Emotion, f64> {
        fractions_over(&self.counts, self.n)
    }

    /// m_i over the emotional word count, the scale of the random baseline.
    pub fn emotional_fractions(&self) -> BTreeMap<Emotion, f64> {
        fractions_over(&self.counts, self.emotional_word_count)
    }
}

fn fractions_over(counts: &BTreeMap<Emotion, usize>, denominator: usize) -> BTreeMap<Emotion, f64> {
    Emotion::ALL
        .iter()
        .map(|&e| {
            let m = counts.get(&e).copied().unwrap_or(0);
            let r = if denominator == 0 {
                0.0
            } else {
                m as f64 / denominator as f64
            };
            (e, r)
        })
        .collect()
}

/// Emotions contributed by one frame member under the negation rule.
pub fn member_emotions(
    stem: &str,
    net: &CooccurrenceNetwork,
    lex: &AffectLexicon,
    rule: &NegationRule,
) -> (EmotionSet, bool) {
    let own = lex.emotions_of(stem);
    let negated = !rule.negation_stems.contains(stem)
        && rule
            .negation_stems
            .iter()
            .any(|neg| net.are_adjacent(stem, neg));
    if !negated {
        return (own, false);
    }
    let flipped = match rule.antonyms.as_ref().and_then(|m| m.antonym(stem)) {
        Some(antonym) => lex.emotions_of(antonym),
        None => antonym_emotions(&own),
    };
    let mut out = if rule.suppress_negated {
        EmotionSet::new()
    } else {
        own
    };
    out.extend(flipped);
    (out, true)
}

pub fn emotional_profile(
    frame: &SemanticFrame,
    net: &CooccurrenceNetwork,
    lex: &AffectLexicon,
    rule: &NegationRule,
) -> Result<FrameEmotions> {
    let mut counts: BTreeMap<Emotion, usize> = Emotion::ALL.iter().map(|&e| (e, 0)).collect();
    let mut n = 0;
    let mut emotional = 0;
    let mut negated = Vec::new();
    for member in frame.neighbours() {
        n += 1;
        let (emotions, is_negated) = member_emotions(member, net, lex, rule);
        if is_negated {
            negated.push(member.to_string());
        }
        if !emotions.is_empty() {
            emotional += 1;
        }
        for e in emotions {
            *counts.entry(e).or_insert(0) += 1;
        }
    }
    if n == 0 {
        return Err(Error::DegenerateFrame(frame.target.clone()));
    }
    Ok(FrameEmotions {
        n,
        counts,
        emotional_word_count: emotional,
        negated,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Baseline {
    pub mean: BTreeMap<Emotion, f64>,
    /// Sample standard deviation (ddof = 1); 0 for a single trial.
    pub std: BTreeMap<Emotion, f64>,
    pub sample_size: usize,
    pub trials: usize,
    pub seed: u64,
    pub with_replacement: bool,
}

/// Per-emotion fractions of one random draw of `sample_size` emotional
/// stems. Trial `t` uses its own generator seeded with `seed + t`.
fn baseline_trial(
    pool: &[&EmotionSet],
    sample_size: usize,
    seed: u64,
    with_replacement: bool,
) -> [f64; 8] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = [0usize; 8];
    let mut add = |set: &EmotionSet| {
        for e in set {
            counts[*e as usize] += 1;
        }
    };
    if with_replacement {
        for _ in 0..sample_size {
            add(pool[rng.gen_range(0..pool.len())]);
        }
    } else {
        for i in index::sample(&mut rng, pool.len(), sample_size) {
            add(pool[i]);
        }
    }
    counts.map(|c| c as f64 / sample_size as f64)
}

pub fn random_baseline(
    emotional_word_count: usize,
    lex: &AffectLexicon,
    trials: usize,
    seed: u64,
    with_replacement: bool,
) -> Result<Baseline> {
    if emotional_word_count == 0 {
        return Err(Error::InsufficientLexicon {
            requested: 0,
            available: lex.emotional_stems().len(),
        });
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let pool: Vec<&EmotionSet> = lex.emotions.values().filter(|s| !s.is_empty()).collect();
    if pool.is_empty() || (!with_replacement && pool.len() < emotional_word_count) {
        return Err(Error::InsufficientLexicon {
            requested: emotional_word_count,
            available: pool.len(),
        });
    }

    let samples: Vec<[f64; 8]> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            baseline_trial(
                &pool,
                emotional_word_count,
                seed.wrapping_add(t),
                with_replacement,
            )
        })
        .collect();

    let mut mean = BTreeMap::new();
    let mut std = BTreeMap::new();
    for e in Emotion::ALL {
        let i = e as usize;
        let mu = samples.iter().map(|s| s[i]).sum::<f64>() / trials as f64;
        let sd = if trials > 1 {
            let ss: f64 = samples.iter().map(|s| (s[i] - mu).powi(2)).sum();
            (ss / (trials - 1) as f64).sqrt()
        } else {
            0.0
        };
        mean.insert(e, mu);
        std.insert(e, sd);
    }
    Ok(Baseline {
        mean,
        std,
        sample_size: emotional_word_count,
        trials,
        seed,
        with_replacement,
    })
}

/// A z-score that may be infinite when the baseline has no spread.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
pub struct ZScore {
    pub value: f64,
}

impl ZScore {
    /// Zero-variance baseline with the observation off its mean.
    pub fn is_degenerate(&self) -> bool {
        self.value.is_infinite()
    }

    pub fn is_significant(&self, threshold: f64) -> bool {
        self.value.abs() >= threshold
    }
}

impl Serialize for ZScore {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.value.is_infinite() {
            serializer.serialize_str(if self.value > 0.0 { "+inf" } else { "-inf" })
        } else {
            serializer.serialize_f64(self.value)
        }
    }
}

pub fn z_scores(
    observed: &BTreeMap<Emotion, f64>,
    baseline: &Baseline,
) -> BTreeMap<Emotion, ZScore> {
    Emotion::ALL
        .iter()
        .map(|&e| {
            let r = observed.get(&e).copied().unwrap_or(0.0);
            let mu = baseline.mean[&e];
            let sd = baseline.std[&e];
            let value = if sd > 0.0 {
                (r - mu) / sd
            } else if r == mu {
                0.0
            } else if r > mu {
                f64::INFINITY
            } else {
                f64::NEG_INFINITY
            };
            (e, ZScore { value })
        })
        .collect()
}

/// Everything reported for one frame.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmotionalProfile {
    pub target: String,
    /// r_i = m_i / N.
    pub fractions: BTreeMap<Emotion, f64>,
    /// m_i / emotional_word_count; the quantity compared with the baseline.
    pub emotional_fractions: BTreeMap<Emotion, f64>,
    pub counts: BTreeMap<Emotion, usize>,
    pub n: usize,
    pub emotional_word_count: usize,
    pub negated_members: Vec<String>,
    pub baseline_mean: BTreeMap<Emotion, f64>,
    pub baseline_std: BTreeMap<Emotion, f64>,
    pub z: BTreeMap<Emotion, ZScore>,
    pub trials: usize,
    pub seed: u64,
    pub metadata: ProfileMetadata,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfileMetadata {
    pub fraction_denominator: &'static str,
    pub baseline_denominator: &'static str,
    pub z_compares: &'static str,
    pub sampling: &'static str,
    pub negation: String,
}

#[derive(Debug, Clone)]
pub struct ProfileOptions {
    pub trials: usize,
    pub seed: u64,
    pub with_replacement: bool,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        ProfileOptions {
            trials: DEFAULT_TRIALS,
            seed: 0,
            with_replacement: false,
        }
    }
}

/// Profile, baseline and z-scores for a frame in one call.
pub fn profile_frame(
    frame: &SemanticFrame,
    net: &CooccurrenceNetwork,
    lex: &AffectLexicon,
    rule: &NegationRule,
    opts: &ProfileOptions,
) -> Result<EmotionalProfile> {
    let counts = emotional_profile(frame, net, lex, rule)?;
    let baseline = random_baseline(
        counts.emotional_word_count,
        lex,
        opts.trials,
        opts.seed,
        opts.with_replacement,
    )?;
    let emotional_fractions = counts.emotional_fractions();
    let z = z_scores(&emotional_fractions, &baseline);
    let negation = format!(
        "{} antonyms added for words adjacent to {:?}{}",
        if rule.antonyms.is_some() {
            "word-level (falling back to wheel opposites)"
        } else {
            "wheel-opposite"
        },
        rule.negation_stems,
        if rule.suppress_negated {
            "; own emotions suppressed"
        } else {
            ""
        }
    );
    Ok(EmotionalProfile {
        target: frame.target.clone(),
        fractions: counts.fractions(),
        emotional_fractions,
        counts: counts.counts,
        n: counts.n,
        emotional_word_count: counts.emotional_word_count,
        negated_members: counts.negated,
        baseline_mean: baseline.mean,
        baseline_std: baseline.std,
        z,
        trials: opts.trials,
        seed: opts.seed,
        metadata: ProfileMetadata {
            fraction_denominator: "frame members excluding the target",
            baseline_denominator: "emotional word count",
            z_compares: "emotional_fractions against the baseline",
            sampling: if opts.with_replacement {
                "with replacement"
            } else {
                "without replacement"
            },
            negation,
        },
    })
}

/// One petal of the flower plot.
#[derive(Debug, Clone, PartialEq)]
pub struct Petal {
    pub emotion: Emotion,
    pub z: ZScore,
    pub significant: bool,
}

impl Serialize for Petal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Petal", 4)?;
        s.serialize_field("emotion", &self.emotion)?;
        s.serialize_field("z", &self.z)?;
        s.serialize_field("significant", &self.significant)?;
        s.serialize_field("degenerate", &self.z.is_degenerate())?;
        s.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Flower {
    pub threshold: f64,
    pub petals: Vec<Petal>,
}

/// Petals in wheel order; significant when |z| >= threshold.
pub fn flower(z: &BTreeMap<Emotion, ZScore>, threshold: f64) -> Flower {
    Flower {
        threshold,
        petals: Emotion::WHEEL
            .iter()
            .map(|&e| {
                let z = z.get(&e).copied().unwrap_or(ZScore { value: 0.0 });
                Petal {
                    emotion: e,
                    z,
                    significant: z.is_significant(threshold),
                }
            })
            .collect(),
    }
}

pub fn flower_json(z: &BTreeMap<Emotion, ZScore>, threshold: f64) -> String {
    let mut out = serde_json::to_string_pretty(&flower(z, threshold)).expect("flower serialises");
    out.push('\n');
    out
}

/// Write the flower JSON, and an SVG rendering when `svg_path` is given.
pub fn flower_export(
    z: &BTreeMap<Emotion, ZScore>,
    threshold: f64,
    path: &Path,
    svg_path: Option<&Path>,
) -> Result<()> {
    std::fs::write(path, flower_json(z, threshold)).map_err(|e| Error::io(path, e))?;
    if let Some(svg) = svg_path {
        std::fs::write(svg, flower_svg(&flower(z, threshold))).map_err(|e| Error::io(svg, e))?;
    }
    Ok(())
}

fn petal_colour(e: Emotion) -> &'static str {
    match e {
        Emotion::Anger => "#d62728",
        Emotion::Anticipation => "#ff7f0e",
        Emotion::Joy => "#f1c40f",
        Emotion::Trust => "#7fbf3f",
        Emotion::Fear => "#2ca02c",
        Emotion::Surprise => "#17becf",
        Emotion::Sadness => "#1f77b4",
        Emotion::Disgust => "#9467bd",
    }
}

/// Polar petal plot: petal length is |z| (infinite values clipped to the
/// plot edge), the shaded disc is the rejection region.
pub fn flower_svg(flower: &Flower) -> String {
    const SIZE: f64 = 400.0;
    const C: f64 = SIZE / 2.0;
    let max_z = flower
        .petals
        .iter()
        .map(|p| p.z.value.abs())
        .filter(|v| v.is_finite())
        .fold(flower.threshold * 1.5, f64::max);
    let scale = (C - 40.0) / max_z;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(
        svg,
        r##"<rect width="100%" height="100%" fill="#ffffff"/>"##
    );
    let _ = writeln!(
        svg,
        r##"<circle class="rejection" cx="{C}" cy="{C}" r="{:.3}" fill="#999999" fill-opacity="0.3"/>"##,
        flower.threshold * scale
    );
    for (i, petal) in flower.petals.iter().enumerate() {
        let angle = (i as f64) * std::f64::consts::TAU / 8.0 - std::f64::consts::FRAC_PI_2;
        let len = if petal.z.value.is_finite() {
            petal.z.value.abs() * scale
        } else {
            C - 30.0
        };
        let width = len * 0.25;
        let (dx, dy) = (angle.cos(), angle.sin());
        let (tx, ty) = (C + dx * len, C + dy * len);
        let (mx, my) = (C + dx * len / 2.0, C + dy * len / 2.0);
        let (px, py) = (-dy * width, dx * width);
        let opacity = if petal.significant { 0.9 } else { 0.35 };
        let _ = writeln!(
            svg,
            r#"<path class="petal" data-emotion="{}" d="M {C:.3} {C:.3} Q {:.3} {:.3} {tx:.3} {ty:.3} Q {:.3} {:.3} {C:.3} {C:.3} Z" fill="{}" fill-opacity="{opacity}" stroke="{}"/>"#,
            petal.emotion,
            mx + px,
            my + py,
            mx - px,
            my - py,
            petal_colour(petal.emotion),
            petal_colour(petal.emotion),
        );
        let (lx, ly) = (C + dx * (C - 15.0), C + dy * (C - 15.0));
        let _ = writeln!(
            svg,
            r#"<text x="{lx:.3}" y="{ly:.3}" font-family="sans-serif" font-size="11" text-anchor="middle">{}</text>"#,
            petal.emotion
        );
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cooccur::{build_network, Bigram, BigramCounts};
    use crate::graphan::semantic_frame;
    use std::path::Path;

    fn lexicon(emolex: &str) -> AffectLexicon {
        AffectLexicon::from_sources(
            "x\t0.5\t0.5\t0.5\n",
            Path::new("vad"),
            emolex,
            Path::new("emo"),
            |w: &str| w.to_string(),
        )
        .unwrap()
    }

    fn net(edges: &[(&str, &str)]) -> CooccurrenceNetwork {
        let pairs: Vec<Bigram> = edges.iter().map(|(a, b)| Bigram::new(*a, *b)).collect();
        let counts: BigramCounts = pairs.iter().map(|p| (p.clone(), 1)).collect();
        build_network(&pairs, &counts, pairs.len(), "t")
    }

    fn not_rule() -> NegationRule {
        NegationRule::new(["no".to_string(), "not".to_string()].into())
    }

    #[test]
    fn half_sad_frame() {
        let lex = lexicon("a\tsadness\t1\nb\tsadness\t1\n");
        let n = net(&[("feel", "a"), ("feel", "b"), ("feel", "c"), ("feel", "d")]);
        let frame = semantic_frame(&n, "feel").unwrap();
        let p = emotional_profile(&frame, &n, &lex, &not_rule()).unwrap();
        assert_eq!(p.n, 4);
        assert_eq!(p.fractions()[&Emotion::Sadness], 0.5);
        assert_eq!(p.fractions()[&Emotion::Joy], 0.0);
        assert_eq!(p.emotional_word_count, 2);
    }

    #[test]
    fn negated_member_adds_opposite() {
        let lex = lexicon("happi\tjoy\t1\n");
        let n = net(&[("feel", "happi"), ("happi", "not")]);
        let frame = semantic_frame(&n, "feel").unwrap();
        let p = emotional_profile(&frame, &n, &lex, &not_rule()).unwrap();
        assert_eq!(p.counts[&Emotion::Joy], 1);
        assert_eq!(p.counts[&Emotion::Sadness], 1);
        assert_eq!(p.negated, vec!["happi".to_string()]);

        let mut suppress = not_rule();
        suppress.suppress_negated = true;
        let p = emotional_profile(&frame, &n, &lex, &suppress).unwrap();
        assert_eq!(p.counts[&Emotion::Joy], 0);
        assert_eq!(p.counts[&Emotion::Sadness], 1);
    }

    #[test]
    fn word_antonym_takes_precedence() {
        let lex = lexicon("happi\tjoy\t1\nsad\tsadness\t1\nsad\tfear\t1\n");
        let n = net(&[("feel", "happi"), ("happi", "not")]);
        let frame = semantic_frame(&n, "feel").unwrap();
        let mut rule = not_rule();
        rule.antonyms =
            Some(AntonymMap::parse("happi sad", Path::new("a"), |w: &str| w.to_string()).unwrap());
        let p = emotional_profile(&frame, &n, &lex, &rule).unwrap();
        assert_eq!(p.counts[&Emotion::Joy], 1);
        assert_eq!(p.counts[&Emotion::Sadness], 1);
        assert_eq!(p.counts[&Emotion::Fear], 1);
    }

    #[test]
    fn unknown_members_and_degenerate_frame() {
        let lex = lexicon("q\tjoy\t1\n");
        let n = net(&[("feel", "a"), ("feel", "b")]);
        let frame = semantic_frame(&n, "feel").unwrap();
        let p = emotional_profile(&frame, &n, &lex, &not_rule()).unwrap();
        assert!(p.fractions().values().all(|&r| r == 0.0));

        let lonely = SemanticFrame {
            target: "feel".into(),
            members: vec!["feel".into()],
            induced_edges: vec![],
        };
        assert!(matches!(
            emotional_profile(&lonely, &n, &lex, &not_rule()),
            Err(Error::DegenerateFrame(_))
        ));
    }

    #[test]
    fn baseline_degenerate_all_joy() {
        let lex = lexicon("a\tjoy\t1\nb\tjoy\t1\nc\tjoy\t1\n");
        let b = random_baseline(2, &lex, 50, 3, false).unwrap();
        assert_eq!(b.mean[&Emotion::Joy], 1.0);
        assert_eq!(b.std[&Emotion::Joy], 0.0);
        assert_eq!(b.mean[&Emotion::Fear], 0.0);
    }

    #[test]
    fn baseline_errors() {
        let lex = lexicon("a\tjoy\t1\n");
        assert!(matches!(
            random_baseline(2, &lex, 10, 0, false),
            Err(Error::InsufficientLexicon {
                requested: 2,
                available: 1
            })
        ));
        assert!(random_baseline(2, &lex, 10, 0, true).is_ok());
        assert!(random_baseline(0, &lex, 10, 0, false).is_err());
        assert!(random_baseline(1, &lex, 0, 0, false).is_err());
    }

    #[test]
    fn z_score_cases() {
        let baseline = Baseline {
            mean: Emotion::ALL.iter().map(|&e| (e, 0.3)).collect(),
            std: Emotion::ALL
                .iter()
                .map(|&e| (e, if e == Emotion::Trust { 0.0 } else { 0.1 }))
                .collect(),
            sample_size: 1,
            trials: 2,
            seed: 0,
            with_replacement: false,
        };
        let observed: BTreeMap<Emotion, f64> = [
            (Emotion::Joy, 0.3),
            (Emotion::Sadness, 0.5),
            (Emotion::Fear, 0.3 + 2.0 * 0.1),
            (Emotion::Trust, 0.4),
        ]
        .into_iter()
        .collect();
        let z = z_scores(&observed, &baseline);
        assert_eq!(z[&Emotion::Joy].value, 0.0);
        assert!((z[&Emotion::Sadness].value - 2.0).abs() < 1e-12);
        assert!((z[&Emotion::Fear].value - 2.0).abs() < 1e-12);
        assert_eq!(z[&Emotion::Trust].value, f64::INFINITY);
        assert!(z[&Emotion::Trust].is_degenerate());
        assert_eq!(
            serde_json::to_string(&z[&Emotion::Trust]).unwrap(),
            "\"+inf\""
        );
    }

    #[test]
    fn flower_order_and_flags() {
        let mut z: BTreeMap<Emotion, ZScore> = Emotion::ALL
            .iter()
            .map(|&e| (e, ZScore { value: 0.0 }))
            .collect();
        let f = flower(&z, DEFAULT_THRESHOLD);
        assert_eq!(
            f.petals.iter().map(|p| p.emotion).collect::<Vec<_>>(),
            Emotion::WHEEL
        );
        assert!(f.petals.iter().all(|p| !p.significant));

        z.insert(Emotion::Sadness, ZScore { value: 3.1 });
        z.insert(Emotion::Joy, ZScore { value: -1.96 });
        let f = flower(&z, DEFAULT_THRESHOLD);
        let sig: Vec<Emotion> = f
            .petals
            .iter()
            .filter(|p| p.significant)
            .map(|p| p.emotion)
            .collect();
        assert_eq!(sig, vec![Emotion::Joy, Emotion::Sadness]);
        let svg = flower_svg(&f);
        assert_eq!(svg.matches("class=\"petal\"").count(), 8);
        assert!(svg.contains("class=\"rejection\""));
    }

    #[test]
    fn export_to_unwritable_path_fails() {
        let z = BTreeMap::new();
        let err =
            flower_export(&z, 1.96, Path::new("/nonexistent/dir/flower.json"), None).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }
}
