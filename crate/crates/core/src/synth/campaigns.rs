use chrono::{DateTime, Duration, Utc};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::config::{member_tweet_total, CampaignSpec};
use super::generate::{
    end_time, push_tweet, retweet_of, start_time, stream, NewTweet, SynthCorpus, CAMPAIGN_STREAM_BASE,
};
use super::roster::{fan_description, filler, neutral_description};
use super::truth::CampaignTruth;
use super::vocab::{POLITICAL_HASHTAGS, POLITICAL_KEYWORDS};
use super::SynthError;
use crate::graphs::NodeCategory;
use crate::influence::FindingKind;
use crate::ingest::{ActorType, TweetKind, UserProfile};

struct Planter<'c> {
    corpus: &'c mut SynthCorpus,
    rng: ChaCha8Rng,
    prefix: String,
    clock: DateTime<Utc>,
    count: usize,
    tweets: Vec<String>,
}

impl Planter<'_> {
    fn next(&mut self) -> (String, DateTime<Utc>) {
        let id = format!("{}-{}", self.prefix, self.count);
        let at = self.clock + Duration::seconds(self.count as i64);
        self.count += 1;
        self.tweets.push(id.clone());
        (id, at)
    }

    fn fresh_user(&mut self, actor: Option<ActorType>, description: String, verified: bool) -> Result<String, SynthError> {
        let user = self
            .corpus
            .roster
            .idle
            .pop_front()
            .ok_or_else(|| SynthError::Config("not enough idle users for campaigns".into()))?;
        self.set_profile(&user, description, actor, verified);
        Ok(user)
    }

    fn set_profile(&mut self, user: &str, description: String, annotation: Option<ActorType>, verified: bool) {
        self.corpus.profiles.insert(
            user.to_string(),
            UserProfile { user_id: user.to_string(), description, verified, annotation },
        );
    }

    fn political_text(&mut self) -> String {
        let n = self.rng.gen_range(4..9);
        let mut words = filler(&mut self.rng, n);
        let at = self.rng.gen_range(0..=words.len());
        words.insert(at, POLITICAL_KEYWORDS[self.rng.gen_range(0..POLITICAL_KEYWORDS.len())]);
        words.join(" ")
    }

    fn post(
        &mut self,
        user: &str,
        kind: TweetKind,
        text: String,
        hashtags: Vec<String>,
        parent: Option<usize>,
        mentions: Vec<String>,
        political: bool,
    ) -> usize {
        let (id, timestamp) = self.next();
        let mut text = text;
        for t in &hashtags {
            text.push_str(" #");
            text.push_str(t);
        }
        let c = &mut *self.corpus;
        push_tweet(
            &mut c.records,
            &mut c.truth,
            NewTweet { id, user, timestamp, kind, text, hashtags, parent, mentions, political },
        )
    }

    fn retweet(&mut self, user: &str, parent: usize) -> usize {
        let (id, timestamp) = self.next();
        let c = &mut *self.corpus;
        let t = retweet_of(&c.records, &c.truth, parent, id, user, timestamp);
        push_tweet(&mut c.records, &mut c.truth, t)
    }

    fn political_users(&self) -> Vec<String> {
        self.corpus.roster.members_with_focus(&self.corpus.config, NodeCategory::Political)
    }

    fn club(&self, club: usize) -> Result<String, SynthError> {
        self.corpus
            .vocabulary
            .clubs
            .get(club)
            .cloned()
            .ok_or_else(|| SynthError::Config(format!("no football community for club {club}")))
    }
}

fn sample(users: &[String], n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<String>, SynthError> {
    if n > users.len() {
        return Err(SynthError::Config(format!("campaign needs {n} distinct users, only {} available", users.len())));
    }
    Ok(users.choose_multiple(rng, n).cloned().collect())
}

/// Appends one campaign's records to the corpus and returns what was
/// planted. Campaign records come after the background in file order and
/// are timestamped inside the collection window.
pub fn plant_campaign(corpus: &mut SynthCorpus, spec: &CampaignSpec) -> Result<CampaignTruth, SynthError> {
    spec.validate()?;
    let index = corpus.truth.campaigns.len();
    let start = start_time();
    let span = (end_time() - start).num_seconds();
    let offset = ((0.5 + 0.1 * index as f64).min(0.95) * span as f64) as i64;
    let mut planter = Planter {
        rng: stream(corpus.config.seed, CAMPAIGN_STREAM_BASE + index as u64),
        corpus,
        prefix: format!("{}{index}", spec.name()),
        clock: start + Duration::seconds(offset),
        count: 0,
        tweets: Vec::new(),
    };
    let (kind, subject, users) = match *spec {
        CampaignSpec::Hijack { retweets, quotes, audience, affiliated, repeat_bot, club } => {
            plant_hijack(&mut planter, retweets, quotes, audience, affiliated, repeat_bot, club)?
        }
        CampaignSpec::Activism { members, roots, root_posts, tweets_per_member, retweet_share, club } => {
            plant_activism(&mut planter, members, roots, root_posts, tweets_per_member, retweet_share, club)?
        }
        CampaignSpec::Megaphone { mentions, replies, quotes, own_posts, topical_posts } => {
            plant_megaphone(&mut planter, mentions, replies, quotes, own_posts, topical_posts)?
        }
    };
    let truth = CampaignTruth { name: planter.prefix.clone(), kind, subject, users, tweets: planter.tweets };
    corpus.truth.campaigns.push(truth.clone());
    Ok(truth)
}

type Planted = (FindingKind, String, Vec<String>);

fn plant_hijack(
    p: &mut Planter<'_>,
    retweets: usize,
    quotes: usize,
    audience: usize,
    affiliated: usize,
    repeat_bot: usize,
    club: usize,
) -> Result<Planted, SynthError> {
    let club_tag = p.club(club)?;
    let description = neutral_description(&mut p.rng);
    let author = p.fresh_user(None, description, false)?;
    let political_tag = POLITICAL_HASHTAGS[p.rng.gen_range(0..POLITICAL_HASHTAGS.len())].to_string();
    let text = p.political_text();
    let source = p.post(&author, TweetKind::Original, text, vec![club_tag, political_tag], None, Vec::new(), true);
    let subject = p.corpus.records[source].tweet_id.clone();

    let pool = p.political_users();
    let crowd = sample(&pool, audience, &mut p.rng)?;
    for (i, user) in crowd.iter().enumerate() {
        let description =
            if i < affiliated { fan_description(club, &mut p.rng) } else { neutral_description(&mut p.rng) };
        let annotation = p.corpus.profiles.get(user).and_then(|u| u.annotation);
        p.set_profile(user, description, annotation, false);
    }
    // crowd[0] is the repeat amplifier; the remaining surplus goes one extra
    // retweet each to the next users in line.
    let mut per_user = vec![1usize; audience];
    per_user[0] = repeat_bot;
    let surplus = retweets - audience - (repeat_bot - 1);
    for extra in per_user.iter_mut().skip(1).take(surplus) {
        *extra += 1;
    }
    let mut slots: Vec<&str> =
        crowd.iter().zip(&per_user).flat_map(|(u, &n)| std::iter::repeat(u.as_str()).take(n)).collect();
    slots.shuffle(&mut p.rng);
    for user in slots {
        p.retweet(user, source);
    }
    let quoters = sample(&pool, quotes, &mut p.rng)?;
    for user in &quoters {
        let text = p.political_text();
        p.post(user, TweetKind::Quote, text, Vec::new(), Some(source), Vec::new(), true);
    }
    let mut users = vec![author];
    users.extend(crowd);
    users.extend(quoters);
    users.sort();
    users.dedup();
    Ok((FindingKind::Hijack, subject, users))
}

fn plant_activism(
    p: &mut Planter<'_>,
    members: usize,
    roots: usize,
    root_posts: usize,
    per_member: f64,
    retweet_share: f64,
    club: usize,
) -> Result<Planted, SynthError> {
    let club_tag = p.club(club)?;
    let rate = p.corpus.config.football_affiliation;
    let mut root_ids = Vec::with_capacity(roots);
    for _ in 0..roots {
        let description = format!("Campaign group. {}", neutral_description(&mut p.rng));
        root_ids.push(p.fresh_user(Some(ActorType::ActivistGroup), description, false)?);
    }
    let mut member_ids = Vec::with_capacity(members);
    for _ in 0..members {
        let description =
            if p.rng.gen_bool(rate) { fan_description(club, &mut p.rng) } else { neutral_description(&mut p.rng) };
        member_ids.push(p.fresh_user(Some(ActorType::FootballFan), description, false)?);
    }

    let mut posts = Vec::with_capacity(root_posts);
    for i in 0..root_posts {
        let root = root_ids[i % roots].clone();
        let political_tag = POLITICAL_HASHTAGS[p.rng.gen_range(0..POLITICAL_HASHTAGS.len())].to_string();
        let text = p.political_text();
        posts.push(p.post(&root, TweetKind::Original, text, vec![club_tag.clone(), political_tag], None, Vec::new(), true));
    }

    let total = member_tweet_total(members, per_member);
    let rts = (retweet_share * total as f64).round() as usize;
    // Every member tweets at least once; the rest of the slots go to random
    // members.
    let mut authors: Vec<usize> = (0..members).collect();
    authors.extend((members..total).map(|_| p.rng.gen_range(0..members)));
    authors.shuffle(&mut p.rng);
    let mut is_rt: Vec<bool> = (0..total).map(|i| i < rts).collect();
    is_rt.shuffle(&mut p.rng);
    let mut originals: Vec<usize> = Vec::new();
    for (&a, &rt) in authors.iter().zip(&is_rt) {
        let user = member_ids[a].clone();
        if rt {
            let own: Vec<usize> =
                originals.iter().copied().filter(|&o| p.corpus.records[o].user_id != user).collect();
            let parent = if own.is_empty() || p.rng.gen_bool(0.8) {
                posts[p.rng.gen_range(0..posts.len())]
            } else {
                own[p.rng.gen_range(0..own.len())]
            };
            p.retweet(&user, parent);
        } else {
            let text = p.political_text();
            originals.push(p.post(&user, TweetKind::Original, text, vec![club_tag.clone()], None, Vec::new(), true));
        }
    }
    let subject = root_ids[0].clone();
    let mut users = root_ids;
    users.extend(member_ids);
    Ok((FindingKind::EmbeddedActivism, subject, users))
}

fn plant_megaphone(
    p: &mut Planter<'_>,
    mentions: usize,
    replies: usize,
    quotes: usize,
    own_posts: usize,
    topical_posts: usize,
) -> Result<Planted, SynthError> {
    let description = format!("Member of parliament. {}", neutral_description(&mut p.rng));
    let mp = p.fresh_user(Some(ActorType::PoliticianOrParty), description, true)?;
    let mut own = Vec::with_capacity(own_posts);
    for _ in 0..own_posts {
        let political_tag = POLITICAL_HASHTAGS[p.rng.gen_range(0..POLITICAL_HASHTAGS.len())].to_string();
        let text = p.political_text();
        own.push(p.post(&mp, TweetKind::Original, text, vec![political_tag], None, Vec::new(), true));
    }
    for _ in 0..topical_posts {
        let club = p.rng.gen_range(0..p.corpus.vocabulary.clubs.len());
        let tag = p.club(club)?;
        let text = filler(&mut p.rng, 6).join(" ");
        p.post(&mp, TweetKind::Original, text, vec![tag], None, Vec::new(), false);
    }
    let pool = p.political_users();
    let mut engaged = Vec::new();
    for user in sample(&pool, mentions, &mut p.rng)? {
        let text = format!("@{mp} {}", p.political_text());
        p.post(&user, TweetKind::Original, text, Vec::new(), None, vec![mp.clone()], true);
        engaged.push(user);
    }
    for user in sample(&pool, replies, &mut p.rng)? {
        let parent = own[p.rng.gen_range(0..own.len())];
        let text = format!("@{mp} {}", p.political_text());
        p.post(&user, TweetKind::Reply, text, Vec::new(), Some(parent), vec![mp.clone()], true);
        engaged.push(user);
    }
    for user in sample(&pool, quotes, &mut p.rng)? {
        let parent = own[p.rng.gen_range(0..own.len())];
        let text = p.political_text();
        p.post(&user, TweetKind::Quote, text, Vec::new(), Some(parent), Vec::new(), true);
        engaged.push(user);
    }
    engaged.sort();
    engaged.dedup();
    let mut users = vec![mp.clone()];
    users.extend(engaged);
    Ok((FindingKind::Megaphone, mp, users))
}
