use std::ops::RangeInclusive;

use serde::Serialize;

/// Codepoint ranges treated as Japanese.
///
/// Shared CJK ideographs are included, so Chinese text is detected too.
pub const DEFAULT_JAPANESE_RANGES: [RangeInclusive<u32>; 6] = [
    0x3040..=0x309F, // Hiragana
    0x30A0..=0x30FF, // Katakana
    0xFF66..=0xFF9D, // Halfwidth Katakana
    0x4E00..=0x9FFF, // CJK Unified Ideographs
    0x3400..=0x4DBF, // CJK Extension A
    0x3001..=0x303F, // CJK symbols and punctuation
];

/// A configurable codepoint-range detector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JapaneseDetector {
    ranges: Vec<RangeInclusive<u32>>,
}

impl Default for JapaneseDetector {
    fn default() -> Self {
        Self {
            ranges: DEFAULT_JAPANESE_RANGES.to_vec(),
        }
    }
}

impl JapaneseDetector {
    pub fn with_ranges(ranges: Vec<RangeInclusive<u32>>) -> Self {
        Self { ranges }
    }

    pub fn ranges(&self) -> &[RangeInclusive<u32>] {
        &self.ranges
    }

    pub fn is_japanese_char(&self, c: char) -> bool {
        let cp = c as u32;
        self.ranges.iter().any(|r| r.contains(&cp))
    }

    pub fn detect(&self, text: &str) -> bool {
        text.chars().any(|c| self.is_japanese_char(c))
    }

    /// Maximal Japanese runs of `text`.
    ///
    /// A run starts and ends on a Japanese character and may contain
    /// whitespace only where Japanese characters sit on both sides.
    pub fn segments(&self, text: &str) -> Vec<Segment> {
        let mut segments = Vec::new();
        let mut chars = text.char_indices().peekable();
        while let Some((start, c)) = chars.next() {
            if !self.is_japanese_char(c) {
                continue;
            }
            let mut end = start + c.len_utf8();
            loop {
                // Look past a whitespace gap without consuming it.
                let mut probe = chars.clone();
                while probe.next_if(|&(_, w)| w.is_whitespace()).is_some() {}
                match probe.next() {
                    Some((i, n)) if self.is_japanese_char(n) => {
                        end = i + n.len_utf8();
                        chars = probe;
                    }
                    _ => break,
                }
            }
            segments.push(Segment {
                start,
                end,
                text: text[start..end].to_string(),
            });
        }
        segments
    }
}

/// A Japanese run inside a span's text. Offsets are byte offsets relative
/// to the span text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub start: usize,
    pub end: usize,
    pub text: String,
}

/// True iff any character falls in the default Japanese ranges.
pub fn detect_japanese(text: &str) -> bool {
    JapaneseDetector::default().detect(text)
}

/// Japanese runs of `text` under the default ranges.
pub fn japanese_segments(text: &str) -> Vec<Segment> {
    JapaneseDetector::default().segments(text)
}
