use std::collections::HashSet;

use super::{Feats, Gender, Number, SeedLexicon, Tag, Token};
use crate::lang::nfc;
use crate::lexicon::BilingualLexicon;
use crate::textprep::Abbreviations;

const DETERMINERS: &[&str] = &[
    "el", "la", "los", "las", "un", "una", "unos", "unas", "este", "esta", "estos", "estas", "ese", "esa", "esos",
    "esas", "aquel", "aquella", "aquellos", "aquellas", "su", "sus", "mi", "mis", "tu", "tus", "nuestro", "nuestra",
    "nuestros", "nuestras", "cada", "otro", "otra", "otros", "otras", "algunos", "algunas", "varios", "varias",
    "muchos", "muchas", "ambos", "ambas",
];

const PRONOUNS: &[&str] = &[
    "yo", "tú", "él", "ella", "ellos", "ellas", "nosotros", "nosotras", "vosotros", "usted", "ustedes", "esto",
    "eso", "aquello", "me", "te", "se", "nos", "os", "le", "les", "lo", "quien", "quién", "quienes", "qué", "cuál",
    "cual", "cuales", "algo", "nada", "nadie", "alguien",
];

/// Prepositions, conjunctions and the contractions `al` / `del`.
const PARTICLES: &[&str] = &[
    "a", "al", "ante", "bajo", "con", "contra", "de", "del", "desde", "durante", "en", "entre", "hacia", "hasta",
    "mediante", "para", "por", "según", "sin", "sobre", "tras", "y", "e", "o", "u", "ni", "pero", "sino", "que",
    "porque", "si", "aunque", "como",
];

/// Forms of ser and estar. `estado` is left out: it is far more often the noun.
const COPULAS: &[&str] = &[
    "ser", "soy", "eres", "es", "somos", "sois", "son", "era", "eras", "éramos", "eran", "fue", "fui", "fuimos",
    "fueron", "será", "serán", "sería", "serían", "sea", "sean", "sido", "siendo", "estar", "estoy", "estás", "está",
    "estamos", "están", "estaba", "estaban", "estuvo", "estuvieron", "estará", "estarán", "esté", "estén",
];

const AUXILIARIES: &[&str] = &["ha", "han", "he", "has", "hemos", "había", "habían", "habrá", "hubo"];

const ADVERBS: &[&str] = &[
    "no", "sí", "muy", "también", "tampoco", "más", "menos", "ya", "aún", "todavía", "siempre", "nunca", "hoy",
    "ayer", "mañana", "aquí", "allí", "ahí", "donde", "dónde", "cuando", "cuándo", "bien", "mal", "casi", "solo",
    "sólo", "tan", "tanto",
];

/// Characters split off the front of a whitespace chunk.
fn is_leading_punct(c: char) -> bool {
    matches!(c, '¿' | '¡' | '(' | '[' | '"' | '\'' | '«' | '“' | '‘' | '—' | '-')
}

/// Characters split off the end of a whitespace chunk.
fn is_trailing_punct(c: char) -> bool {
    matches!(c, '.' | ',' | ';' | ':' | '!' | '?' | ')' | ']' | '"' | '\'' | '»' | '”' | '’' | '…' | '—' | '-')
}

fn is_punct_token(s: &str) -> bool {
    s.chars().all(|c| c.is_ascii_punctuation() || is_leading_punct(c) || is_trailing_punct(c))
}

/// Splits on whitespace, then peels punctuation off both ends of each chunk.
/// An abbreviation from `abbreviations` keeps its final period.
pub fn tokenize_es(text: &str, abbreviations: &Abbreviations) -> Vec<String> {
    let mut tokens = Vec::new();
    for chunk in text.split_whitespace() {
        let mut rest = chunk;
        while let Some(c) = rest.chars().next().filter(|&c| is_leading_punct(c)) {
            if rest.chars().count() == 1 {
                break;
            }
            tokens.push(c.to_string());
            rest = &rest[c.len_utf8()..];
        }
        let mut trailing = Vec::new();
        while rest.chars().count() > 1 {
            if abbreviations.contains(rest) {
                break;
            }
            let c = rest.chars().next_back().expect("non-empty");
            if !is_trailing_punct(c) {
                break;
            }
            trailing.push(c.to_string());
            rest = &rest[..rest.len() - c.len_utf8()];
        }
        if !rest.is_empty() {
            tokens.push(rest.to_string());
        }
        tokens.extend(trailing.into_iter().rev());
    }
    tokens
}

fn suffix_feats(lower: &str) -> Feats {
    // -ista nouns take either gender: el/la economista
    let gender = if lower.ends_with("ista") || lower.ends_with("istas") {
        None
    } else if lower.ends_with('o') || lower.ends_with("os") {
        Some(Gender::M)
    } else if lower.ends_with('a') || lower.ends_with("as") {
        Some(Gender::F)
    } else {
        None
    };
    // a stressed final vowel before -s marks a singular: país, japonés, autobús
    let stressed_s = ["ás", "és", "ís", "ós", "ús"].iter().any(|end| lower.ends_with(end));
    let number = if lower.ends_with('s') && !stressed_s { Number::Pl } else { Number::Sg };
    Feats { gender, number: Some(number), ..Feats::EMPTY }
}

/// Rule-based Spanish tagger: closed-class lists, the seed lexicon, suffix
/// rules for gender and number, and capitalization for proper nouns.
#[derive(Debug, Clone)]
pub struct EsTagger {
    seed: SeedLexicon,
    /// Lowercase Spanish terms of the translation lexicon.
    lowercase_terms: HashSet<String>,
    abbreviations: Abbreviations,
}

impl EsTagger {
    pub fn new(seed: SeedLexicon, lexicon: &BilingualLexicon, abbreviations: Abbreviations) -> EsTagger {
        let lowercase_terms = lexicon.es_terms().filter(|t| t.to_lowercase() == *t).map(str::to_string).collect();
        EsTagger { seed, lowercase_terms, abbreviations }
    }

    fn closed(lower: &str) -> Option<(Tag, Feats)> {
        if COPULAS.contains(&lower) {
            Some((Tag::Aux, Feats::COPULA))
        } else if AUXILIARIES.contains(&lower) {
            Some((Tag::Aux, Feats::EMPTY))
        } else if DETERMINERS.contains(&lower) {
            Some((Tag::Det, Feats::EMPTY))
        } else if PRONOUNS.contains(&lower) {
            Some((Tag::Pron, Feats::EMPTY))
        } else if PARTICLES.contains(&lower) {
            Some((Tag::Part, Feats::EMPTY))
        } else if ADVERBS.contains(&lower) {
            Some((Tag::Adv, Feats::EMPTY))
        } else {
            None
        }
    }

    fn is_known(&self, lower: &str) -> bool {
        self.seed.contains(lower) || self.lowercase_terms.contains(lower)
    }

    fn word(&self, surface: &str, initial: bool) -> (Tag, Feats) {
        if surface.starts_with(|c: char| c.is_ascii_digit()) {
            return (Tag::Num, Feats::EMPTY);
        }
        let lower = nfc(&surface.to_lowercase());
        if let Some(hit) = Self::closed(&lower) {
            return hit;
        }
        let capitalized = surface.starts_with(char::is_uppercase);
        if capitalized && (!initial || !self.is_known(&lower)) {
            return (Tag::Propn, Feats::EMPTY);
        }
        let (tag, seeded) = match self.seed.get(&lower) {
            Some(hit) => hit,
            None if lower.ends_with("mente") => (Tag::Adv, Feats::EMPTY),
            None => (Tag::Noun, Feats::EMPTY),
        };
        if !matches!(tag, Tag::Noun | Tag::Adj) {
            return (tag, seeded);
        }
        // seed features take precedence over the suffix guess
        let guessed = suffix_feats(&lower);
        let feats = Feats {
            gender: seeded.gender.or(guessed.gender),
            number: seeded.number.or(guessed.number),
            ..seeded
        };
        (tag, feats)
    }

    pub fn tag_text(&self, text: &str) -> Vec<Token> {
        let mut initial = true;
        tokenize_es(text, &self.abbreviations)
            .into_iter()
            .map(|surface| {
                if is_punct_token(&surface) {
                    return Token::new(surface, Tag::Punct);
                }
                let (tag, feats) = self.word(&surface, initial);
                initial = false;
                Token::with_feats(surface, tag, feats)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::Lang;
    use crate::lexicon::Source;

    fn tagger() -> EsTagger {
        EsTagger::new(SeedLexicon::builtin(Lang::Es), &BilingualLexicon::new(), Abbreviations::default())
    }

    fn tags(tokens: &[Token]) -> Vec<(&str, Tag)> {
        tokens.iter().map(|t| (t.surface.as_str(), t.tag)).collect()
    }

    #[test]
    fn tokenization() {
        let abbr = Abbreviations::default();
        assert_eq!(tokenize_es("¿Es esto un libro?", &abbr), ["¿", "Es", "esto", "un", "libro", "?"]);
        assert_eq!(tokenize_es("(1.5 km), dijo el Dr. Ruiz.", &abbr), ["(", "1.5", "km", ")", ",", "dijo", "el", "Dr.", "Ruiz", "."]);
        assert_eq!(tokenize_es("¡¿Qué?!", &abbr), ["¡", "¿", "Qué", "?", "!"]);
        assert_eq!(tokenize_es("?", &abbr), ["?"]);
    }

    #[test]
    fn suffix_rules() {
        assert_eq!(suffix_feats("casas").gender, Some(Gender::F));
        assert_eq!(suffix_feats("casas").number, Some(Number::Pl));
        assert_eq!(suffix_feats("japonés").number, Some(Number::Sg));
        assert_eq!(suffix_feats("economista").gender, None);
        assert_eq!(suffix_feats("turistas").number, Some(Number::Pl));
    }

    #[test]
    fn dog_drinks_water() {
        let tokens = tagger().tag_text("El perro bebe agua");
        assert_eq!(tags(&tokens), [("El", Tag::Det), ("perro", Tag::Noun), ("bebe", Tag::Verb), ("agua", Tag::Noun)]);
        assert_eq!(tokens[1].feats.gender, Some(Gender::M));
        assert_eq!(tokens[1].feats.number, Some(Number::Sg));
        assert_eq!(tokens[3].feats.gender, Some(Gender::F));
        assert_eq!(tokens[3].feats.number, Some(Number::Sg));
    }

    #[test]
    fn copular_question() {
        let tokens = tagger().tag_text("¿Es esto un libro?");
        assert_eq!(
            tags(&tokens),
            [("¿", Tag::Punct), ("Es", Tag::Aux), ("esto", Tag::Pron), ("un", Tag::Det), ("libro", Tag::Noun), ("?", Tag::Punct)]
        );
        assert!(tokens[1].is_copula());
    }

    #[test]
    fn capitalization() {
        let tokens = tagger().tag_text("La capital es Madrid.");
        assert_eq!(tokens[3], Token::new("Madrid", Tag::Propn));
        let tokens = tagger().tag_text("Madrid es grande.");
        assert_eq!(tokens[0].tag, Tag::Propn);
        let tokens = tagger().tag_text("Perro grande.");
        assert_eq!(tokens[0].tag, Tag::Noun);
    }

    #[test]
    fn lexicon_terms_count_as_known() {
        let mut lex = BilingualLexicon::new();
        lex.insert("霧", "niebla", Source::Dict);
        let tagger = EsTagger::new(SeedLexicon::parse(Lang::Es, "").unwrap(), &lex, Abbreviations::default());
        assert_eq!(tagger.tag_text("Niebla densa.")[0].tag, Tag::Noun);
        assert_eq!(tagger.tag_text("Bruma densa.")[0].tag, Tag::Propn);
    }

    #[test]
    fn unknown_words() {
        let tokens = tagger().tag_text("rápidamente las cosas");
        assert_eq!(tokens[0].tag, Tag::Adv);
        assert_eq!(tokens[2].tag, Tag::Noun);
        assert_eq!(tokens[2].feats.gender, Some(Gender::F));
        assert_eq!(tokens[2].feats.number, Some(Number::Pl));
        assert_eq!(tagger().tag_text("en 1905")[1].tag, Tag::Num);
    }

    #[test]
    fn surfaces_reconstruct_the_text() {
        let text = "«Hola», dijo la Sra. Pérez (¡de verdad!)...";
        let joined: String = tagger().tag_text(text).into_iter().map(|t| t.surface).collect();
        assert_eq!(joined, text.replace(char::is_whitespace, ""));
    }
}
