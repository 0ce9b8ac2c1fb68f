//! Token normalisation and word-boundary term matching.

use unicode_normalization::UnicodeNormalization;

use super::IngestError;

/// Case-folds and NFC-normalises free text.
pub fn fold_text(text: &str) -> String {
    caseless::default_case_fold_str(text).nfc().collect()
}

/// Normalises a hashtag to its canonical token: leading `#` markers removed,
/// Unicode case-folded, NFC-normalised and trimmed.
///
/// ```
/// # use terrace::ingest::normalize_hashtag;
/// assert_eq!(normalize_hashtag("#Brexit").unwrap(), "brexit");
/// assert!(normalize_hashtag("#").is_err());
/// ```
pub fn normalize_hashtag(raw: &str) -> Result<String, IngestError> {
    let stripped = raw.trim().trim_start_matches(['#', '\u{FF03}']);
    let token = fold_text(stripped.trim());
    if token.is_empty() {
        return Err(IngestError::RejectedToken(raw.to_string()));
    }
    Ok(token)
}

/// Normalises a free-text lexicon term (keyword or excluded phrase).
pub(crate) fn normalize_term(raw: &str) -> Option<String> {
    let term = fold_text(raw.trim());
    (!term.is_empty()).then_some(term)
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// Byte ranges of every occurrence of `needle` in `haystack` that is not
/// glued to a neighbouring word character. Both arguments are expected to be
/// folded already.
pub fn word_matches(haystack: &str, needle: &str) -> Vec<(usize, usize)> {
    if needle.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut from = 0;
    while let Some(pos) = haystack[from..].find(needle) {
        let start = from + pos;
        let end = start + needle.len();
        let before_ok = haystack[..start]
            .chars()
            .next_back()
            .map_or(true, |c| !is_word_char(c));
        let after_ok = haystack[end..]
            .chars()
            .next()
            .map_or(true, |c| !is_word_char(c));
        if before_ok && after_ok {
            out.push((start, end));
        }
        // advance by one character so overlapping occurrences are still seen
        from = start + haystack[start..].chars().next().map_or(1, char::len_utf8);
    }
    out
}

/// True if `needle` occurs in `haystack` on word boundaries.
pub fn contains_word(haystack: &str, needle: &str) -> bool {
    !word_matches(haystack, needle).is_empty()
}
