use std::collections::BTreeMap;

use chrono::{DateTime, Duration, TimeZone, Utc};
use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::campaigns::plant_campaign;
use super::config::SynthConfig;
use super::roster::{build_profiles, filler, Roster, ANCHORS_PER_COMMUNITY, ANCHOR_WEIGHT};
use super::truth::GroundTruth;
use super::vocab::{Vocabulary, POLITICAL_HASHTAGS, POLITICAL_KEYWORDS};
use super::SynthError;
use crate::graphs::NodeCategory;
use crate::ingest::{ProfileSet, TweetKind, TweetRecord, UserProfile};

/// A generated corpus with everything needed to run and check the pipeline.
#[derive(Debug, Clone)]
pub struct SynthCorpus {
    pub config: SynthConfig,
    pub records: Vec<TweetRecord>,
    pub profiles: BTreeMap<String, UserProfile>,
    pub truth: GroundTruth,
    pub vocabulary: Vocabulary,
    pub roster: Roster,
}

impl SynthCorpus {
    pub fn profile_set(&self) -> ProfileSet {
        ProfileSet::new(self.profiles.values().cloned()).expect("unique ids")
    }
}

pub(crate) fn start_time() -> DateTime<Utc> {
    Utc.with_ymd_and_hms(2016, 7, 25, 0, 0, 0).unwrap()
}

pub(crate) fn end_time() -> DateTime<Utc> {
    Utc.with_ymd_and_hms(2017, 10, 26, 23, 59, 59).unwrap()
}

/// Generator stream for a purpose; streams never overlap.
pub(crate) fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Share of background interactions aimed at another community's tweets.
const CROSS_COMMUNITY: f64 = 0.05;

pub(crate) const PROFILE_STREAM: u64 = 0;
pub(crate) const BACKGROUND_STREAM: u64 = 1;
pub(crate) const CAMPAIGN_STREAM_BASE: u64 = 16;

/// Assembles text and hashtags for a community member's own tweet.
pub(crate) struct Composer<'a> {
    vocab: &'a Vocabulary,
    zipf: Vec<WeightedIndex<f64>>,
    own_club: Vec<Option<usize>>,
    tag_count: WeightedIndex<f64>,
}

impl<'a> Composer<'a> {
    pub fn new(config: &SynthConfig, vocab: &'a Vocabulary) -> Self {
        let zipf = vocab
            .communities
            .iter()
            .map(|tags| WeightedIndex::new((0..tags.len()).map(|j| 1.0 / (j as f64 + 1.0).powf(0.9))).unwrap())
            .collect();
        let own_club = (0..config.communities.len())
            .map(|c| vocab.club_communities.iter().position(|&fc| fc == c))
            .collect();
        Composer { vocab, zipf, own_club, tag_count: WeightedIndex::new([0.25, 0.4, 0.25, 0.1]).unwrap() }
    }

    /// Text and hashtags; political tweets always carry a lexicon hashtag
    /// or keyword, others never do.
    pub fn compose(&self, community: usize, political: bool, rng: &mut ChaCha8Rng) -> (String, Vec<String>) {
        let vocab = &self.vocab.communities[community];
        let n = rng.gen_range(4..10);
        let mut words = filler(rng, n);
        let mut tags: Vec<String> = Vec::new();
        if rng.gen_bool(0.3) {
            let club = self.own_club[community].unwrap_or_else(|| rng.gen_range(0..self.vocab.clubs.len()));
            tags.push(self.vocab.clubs[club].clone());
        }
        for _ in 0..self.tag_count.sample(rng) {
            let (tag, cat) = &vocab[self.zipf[community].sample(rng)];
            if political || *cat != NodeCategory::Political {
                tags.push(tag.clone());
            }
        }
        let keyword;
        if political {
            if !tags.iter().any(|t| self.vocab.political_pool.contains(t)) && rng.gen_bool(0.5) {
                let own: Vec<&String> = vocab.iter().filter(|(_, c)| *c == NodeCategory::Political).map(|(t, _)| t).collect();
                let tag = if own.is_empty() || rng.gen_bool(0.3) {
                    POLITICAL_HASHTAGS[rng.gen_range(0..POLITICAL_HASHTAGS.len())].to_string()
                } else {
                    own[rng.gen_range(0..own.len())].clone()
                };
                tags.push(tag);
            }
            let tagged = tags.iter().any(|t| self.vocab.political_pool.contains(t));
            if !tagged || rng.gen_bool(0.4) {
                keyword = POLITICAL_KEYWORDS[rng.gen_range(0..POLITICAL_KEYWORDS.len())];
                let at = rng.gen_range(0..=words.len());
                words.insert(at, keyword);
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        tags.retain(|t| seen.insert(t.clone()));
        let mut text = words.join(" ");
        for t in &tags {
            text.push_str(" #");
            text.push_str(t);
        }
        (text, tags)
    }
}

pub(crate) struct NewTweet<'s> {
    pub id: String,
    pub user: &'s str,
    pub timestamp: DateTime<Utc>,
    pub kind: TweetKind,
    pub text: String,
    pub hashtags: Vec<String>,
    pub parent: Option<usize>,
    pub mentions: Vec<String>,
    pub political: bool,
}

/// Appends a record and keeps the truth sets in step. `parent` indexes
/// `records`.
pub(crate) fn push_tweet(records: &mut Vec<TweetRecord>, truth: &mut GroundTruth, t: NewTweet<'_>) -> usize {
    let (target_tweet_id, target_user_id) = match t.parent {
        Some(p) => (Some(records[p].tweet_id.clone()), Some(records[p].user_id.clone())),
        None => (None, None),
    };
    if t.political {
        truth.political.insert(t.id.clone());
        if matches!(t.kind, TweetKind::Quote | TweetKind::Reply) {
            let parent = &records[t.parent.expect("interaction has parent")];
            if !truth.political.contains(&parent.tweet_id) {
                truth.context.insert(parent.tweet_id.clone());
            }
        }
    }
    records.push(TweetRecord {
        tweet_id: t.id,
        user_id: t.user.to_string(),
        timestamp: t.timestamp,
        text: t.text,
        hashtags: t.hashtags,
        kind: t.kind,
        target_tweet_id,
        target_user_id,
        mentioned_user_ids: t.mentions,
    });
    records.len() - 1
}

/// Retweet of `parent`: same text behind an `RT @author:` prefix, same
/// hashtags, same political status.
pub(crate) fn retweet_of<'s>(
    records: &[TweetRecord],
    truth: &GroundTruth,
    parent: usize,
    id: String,
    user: &'s str,
    timestamp: DateTime<Utc>,
) -> NewTweet<'s> {
    let p = &records[parent];
    NewTweet {
        id,
        user,
        timestamp,
        kind: TweetKind::Retweet,
        text: format!("RT @{}: {}", p.user_id, p.text),
        hashtags: p.hashtags.clone(),
        parent: Some(parent),
        mentions: vec![p.user_id.clone()],
        political: truth.political.contains(&p.tweet_id),
    }
}

/// Splits `total` over weights by largest remainder.
pub(crate) fn apportion(total: usize, weights: &[usize]) -> Vec<usize> {
    let sum: usize = weights.iter().sum();
    let exact: Vec<f64> = weights.iter().map(|&w| total as f64 * w as f64 / sum as f64).collect();
    let mut out: Vec<usize> = exact.iter().map(|x| x.floor() as usize).collect();
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| {
        let (fa, fb) = (exact[a] - exact[a].floor(), exact[b] - exact[b].floor());
        fb.partial_cmp(&fa).unwrap().then(a.cmp(&b))
    });
    let mut rest = total - out.iter().sum::<usize>();
    for i in order.into_iter().cycle() {
        if rest == 0 {
            break;
        }
        out[i] += 1;
        rest -= 1;
    }
    out
}

fn background(
    config: &SynthConfig,
    roster: &Roster,
    composer: &Composer<'_>,
    records: &mut Vec<TweetRecord>,
    truth: &mut GroundTruth,
) -> Result<(), SynthError> {
    let mut rng = stream(config.seed, BACKGROUND_STREAM);
    let counts = config.background_counts()?;
    let total: usize = counts.iter().sum();

    let mut kinds: Vec<TweetKind> =
        TweetKind::ALL.iter().zip(counts).flat_map(|(&k, n)| std::iter::repeat(k).take(n)).collect();
    kinds.shuffle(&mut rng);
    let sizes: Vec<usize> = config.communities.iter().map(|c| c.size).collect();
    let mut slots: Vec<usize> =
        apportion(total, &sizes).into_iter().enumerate().flat_map(|(c, n)| std::iter::repeat(c).take(n)).collect();
    slots.shuffle(&mut rng);

    // Each community's first tweet must be something to respond to.
    let mut opened = vec![false; sizes.len()];
    for i in 0..total {
        let c = slots[i];
        if opened[c] {
            continue;
        }
        if kinds[i] != TweetKind::Original {
            let j = (i + 1..total)
                .find(|&j| slots[j] == c && kinds[j] == TweetKind::Original)
                .ok_or_else(|| SynthError::Config(format!("community {c} has no original tweets")))?;
            kinds.swap(i, j);
        }
        opened[c] = true;
    }

    let pickers: Vec<WeightedIndex<f64>> = roster
        .communities
        .iter()
        .map(|members| {
            let weights: Vec<f64> = (0..members.len())
                .map(|i| if i < ANCHORS_PER_COMMUNITY { ANCHOR_WEIGHT } else { 1.0 + 4.0 * rng.gen::<f64>().powi(2) })
                .collect();
            WeightedIndex::new(weights).unwrap()
        })
        .collect();

    let start = start_time();
    let span = (end_time() - start).num_seconds();
    let mut parents: Vec<Vec<usize>> = vec![Vec::new(); sizes.len()];
    let mut anchor_parents: Vec<Vec<usize>> = vec![Vec::new(); sizes.len()];
    for i in 0..total {
        let c = slots[i];
        let kind = kinds[i];
        let members = &roster.communities[c];
        let timestamp = start + Duration::seconds(i as i64 * span / total as i64);
        let id = format!("t{i:06}");
        let mut user = members[pickers[c].sample(&mut rng)].as_str();

        let parent = (kind != TweetKind::Original).then(|| {
            let other = rng.gen_range(0..sizes.len());
            let pool = if rng.gen_bool(CROSS_COMMUNITY) && !parents[other].is_empty() {
                &parents[other]
            } else if !anchor_parents[c].is_empty() && rng.gen_bool(0.3) {
                &anchor_parents[c]
            } else {
                &parents[c]
            };
            pool[rng.gen_range(0..pool.len())]
        });
        if let Some(p) = parent {
            for _ in 0..8 {
                if records[p].user_id != user {
                    break;
                }
                user = members[pickers[c].sample(&mut rng)].as_str();
            }
        }
        let tweet = match kind {
            TweetKind::Retweet => retweet_of(records, truth, parent.unwrap(), id, user, timestamp),
            _ => {
                let political = rng.gen_bool(config.communities[c].political_fraction);
                let (mut text, hashtags) = composer.compose(c, political, &mut rng);
                let mut mentions = Vec::new();
                match kind {
                    TweetKind::Reply => {
                        let author = records[parent.unwrap()].user_id.clone();
                        text = format!("@{author} {text}");
                        mentions.push(author);
                    }
                    TweetKind::Original if rng.gen_bool(0.1) => {
                        let anchor = &members[rng.gen_range(0..ANCHORS_PER_COMMUNITY)];
                        if anchor != user {
                            text = format!("@{anchor} {text}");
                            mentions.push(anchor.clone());
                        }
                    }
                    _ => {}
                }
                NewTweet { id, user, timestamp, kind, text, hashtags, parent, mentions, political }
            }
        };
        let is_anchor = roster.is_anchor(c, user);
        let idx = push_tweet(records, truth, tweet);
        if kind != TweetKind::Retweet {
            parents[c].push(idx);
            if is_anchor {
                anchor_parents[c].push(idx);
            }
        }
    }
    Ok(())
}

/// Generates the background corpus and plants every configured campaign.
pub fn generate_corpus(config: &SynthConfig) -> Result<SynthCorpus, SynthError> {
    config.validate()?;
    let vocabulary = Vocabulary::build(config);
    let roster = Roster::build(config);
    let profiles = build_profiles(config, &roster, &vocabulary, &mut stream(config.seed, PROFILE_STREAM));
    let mut truth = GroundTruth { seed: config.seed, ..Default::default() };
    for (c, members) in roster.communities.iter().enumerate() {
        for u in members {
            truth.user_communities.insert(u.clone(), c);
        }
    }
    let mut records = Vec::with_capacity(config.n_tweets);
    {
        let composer = Composer::new(config, &vocabulary);
        background(config, &roster, &composer, &mut records, &mut truth)?;
    }
    let mut corpus = SynthCorpus { config: config.clone(), records, profiles, truth, vocabulary, roster };
    for spec in config.campaigns.clone() {
        plant_campaign(&mut corpus, &spec)?;
    }
    Ok(corpus)
}
