//! CoNLL-U reading and writing. Penn tags are taken from the XPOS column.

use std::fmt::Write as _;
use std::path::Path;

use super::tokenizer::{is_number_shaped, QuoteSide, Token, TokenKind};
use super::{check_tree, AnnotatedHeadline, DependencyArc, PennTag, TaggedToken};
use crate::error::{Error, Result};

#[derive(Debug, Default)]
pub struct Ingested {
    pub headlines: Vec<AnnotatedHeadline>,
    pub warnings: Vec<String>,
}

/// Synthetic headline treebank used to train the bundled annotators.
pub const BUNDLED_TREEBANK: &str = include_str!("../../data/treebank/headlines.conllu");

pub fn bundled_treebank() -> Vec<AnnotatedHeadline> {
    parse_conllu(BUNDLED_TREEBANK).headlines
}

pub fn ingest_conllu(path: &Path) -> Result<Ingested> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(parse_conllu(&text))
}

pub fn parse_conllu(text: &str) -> Ingested {
    let mut out = Ingested::default();
    let mut block: Vec<(usize, &str)> = Vec::new();
    let lines: Vec<&str> = text.lines().collect();
    for (lineno, line) in lines.iter().enumerate() {
        if line.trim().is_empty() {
            flush(&mut block, &mut out);
        } else {
            block.push((lineno + 1, line));
        }
    }
    flush(&mut block, &mut out);
    out
}

fn flush(block: &mut Vec<(usize, &str)>, out: &mut Ingested) {
    if block.is_empty() {
        return;
    }
    let first_line = block[0].0;
    let id = out.headlines.len() as u64;
    match parse_block(block, id) {
        Ok(Some(h)) => out.headlines.push(h),
        Ok(None) => {}
        Err(e) => out
            .warnings
            .push(format!("sentence at line {first_line} skipped: {e}")),
    }
    block.clear();
}

fn parse_block(block: &[(usize, &str)], id: u64) -> Result<Option<AnnotatedHeadline>> {
    let mut tokens = Vec::new();
    let mut heads = Vec::new();
    let mut rels = Vec::new();
    for &(lineno, line) in block {
        if line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 10 {
            return Err(Error::Data(format!(
                "line {lineno}: expected 10 columns, found {}",
                cols.len()
            )));
        }
        // multiword ranges and empty nodes carry no tree position
        if cols[0].contains('-') || cols[0].contains('.') {
            continue;
        }
        let idx: usize = cols[0]
            .parse()
            .map_err(|_| Error::Data(format!("line {lineno}: bad id {:?}", cols[0])))?;
        if idx != tokens.len() + 1 {
            return Err(Error::Data(format!("line {lineno}: ids out of sequence")));
        }
        let tag_str = if cols[4] != "_" { cols[4] } else { cols[3] };
        let tag: PennTag = tag_str
            .parse()
            .map_err(|e| Error::Data(format!("line {lineno}: {e}")))?;
        let head: usize = cols[6]
            .parse()
            .map_err(|_| Error::Data(format!("line {lineno}: bad head {:?}", cols[6])))?;
        tokens.push(token_from_gold(cols[1], tag, tokens.len()));
        heads.push(head);
        rels.push(map_relation(cols[7]));
    }
    if tokens.is_empty() {
        return Ok(None);
    }
    let n = tokens.len();
    let heads: Vec<Option<usize>> = heads
        .into_iter()
        .map(|h| match h {
            0 => Ok(None),
            h if h <= n => Ok(Some(h - 1)),
            h => Err(Error::Data(format!("head {h} out of range"))),
        })
        .collect::<Result<_>>()?;
    check_tree(&heads)?;
    flag_contractions(&mut tokens);
    let tokens: Vec<TaggedToken> = tokens
        .into_iter()
        .map(|(token, tag)| TaggedToken { token, tag })
        .collect();
    let rels: Vec<String> = rels
        .into_iter()
        .map(|r| if r == "ROOT" { "root".to_string() } else { r })
        .collect();
    AnnotatedHeadline::new(id, tokens, &heads, rels).map(Some)
}

fn token_from_gold(form: &str, tag: PennTag, index: usize) -> (Token, PennTag) {
    let kind = match tag {
        PennTag::OpenQuote => TokenKind::Quote(QuoteSide::Open),
        PennTag::CloseQuote => TokenKind::Quote(QuoteSide::Close),
        t if t.is_punct() => TokenKind::Punct,
        _ if is_number_shaped(form) => TokenKind::Number,
        _ => TokenKind::Word,
    };
    let token = Token {
        surface: form.to_string(),
        normalized: form.replace('\u{2019}', "'"),
        index,
        is_contraction_part: false,
        kind,
    };
    (token, tag)
}

fn flag_contractions(tokens: &mut [(Token, PennTag)]) {
    for i in 0..tokens.len() {
        let s = tokens[i].0.surface.to_lowercase().replace('\u{2019}', "'");
        let is_suffix =
            s == "n't" || matches!(s.as_str(), "'s" | "'re" | "'ll" | "'ve" | "'d" | "'m");
        if is_suffix {
            tokens[i].0.is_contraction_part = true;
            if i > 0 && tokens[i - 1].0.is_word() {
                tokens[i - 1].0.is_contraction_part = true;
            }
        }
    }
}

/// Map Universal Dependencies v2 relation names to the Stanford-style names
/// used throughout (dobj, nsubjpass, nmod:agent, ...).
pub fn map_relation(rel: &str) -> String {
    match rel {
        "obj" => "dobj",
        "nsubj:pass" => "nsubjpass",
        "aux:pass" => "auxpass",
        "csubj:pass" => "csubjpass",
        "obl" => "nmod",
        "obl:agent" => "nmod:agent",
        "obl:tmod" => "nmod:tmod",
        "obl:npmod" => "nmod:npmod",
        "flat" | "flat:name" => "compound",
        other => other,
    }
    .to_string()
}

pub fn upos(tag: PennTag) -> &'static str {
    use PennTag::*;
    match tag {
        Cc => "CCONJ",
        Cd => "NUM",
        Dt | Pdt | Wdt => "DET",
        Ex | Prp | PrpS | Wp | WpS => "PRON",
        Fw | Ls => "X",
        In | Rp => "ADP",
        Jj | Jjr | Jjs => "ADJ",
        Md => "AUX",
        Nn | Nns => "NOUN",
        Nnp | Nnps => "PROPN",
        Pos | To => "PART",
        Rb | Rbr | Rbs | Wrb => "ADV",
        Sym | Dollar | Hash => "SYM",
        Uh => "INTJ",
        Vb | Vbd | Vbg | Vbn | Vbp | Vbz => "VERB",
        OpenQuote | CloseQuote | Lrb | Rrb | Comma | Period | Colon => "PUNCT",
    }
}

pub fn write_conllu(headlines: &[AnnotatedHeadline]) -> String {
    let mut s = String::new();
    for h in headlines {
        let _ = writeln!(s, "# sent_id = {}", h.id);
        let _ = writeln!(s, "# text = {}", h.text());
        for (i, (t, arc)) in h.tokens.iter().zip(&h.arcs).enumerate() {
            let DependencyArc { head, relation, .. } = arc;
            let head = head.map(|x| x + 1).unwrap_or(0);
            let _ = writeln!(
                s,
                "{}\t{}\t_\t{}\t{}\t_\t{}\t{}\t_\t_",
                i + 1,
                t.token.surface,
                upos(t.tag),
                t.tag,
                head,
                relation
            );
        }
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO: &str = "# text = Birds fly\n1\tBirds\t_\tNOUN\tNNS\t_\t2\tnsubj\t_\t_\n2\tfly\t_\tVERB\tVBP\t_\t0\troot\t_\t_\n\n\
                       1\tThe\t_\tDET\tDT\t_\t2\tdet\t_\t_\n2\tend\t_\tNOUN\tNN\t_\t0\troot\t_\t_\n";

    #[test]
    fn reads_two_sentences() {
        let got = parse_conllu(TWO);
        assert_eq!(got.headlines.len(), 2);
        assert!(got.warnings.is_empty());
        let h = &got.headlines[0];
        assert_eq!(h.arcs[0].head, Some(1));
        assert_eq!(h.arcs[0].relation, "nsubj");
        assert_eq!(h.root(), Some(1));
        assert_eq!(h.tree_height, 1);
    }

    #[test]
    fn malformed_block_is_skipped() {
        let bad = TWO.replace("2\tend\t_\tNOUN\tNN\t_\t0", "2\tend\t_\tNOUN\tNN\t_\t7");
        let got = parse_conllu(&bad);
        assert_eq!(got.headlines.len(), 1);
        assert_eq!(got.warnings.len(), 1);
    }

    #[test]
    fn relation_mapping() {
        assert_eq!(map_relation("obj"), "dobj");
        assert_eq!(map_relation("obl:agent"), "nmod:agent");
        assert_eq!(map_relation("acl:relcl"), "acl:relcl");
    }
}
