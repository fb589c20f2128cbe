//! The XML form of a [`MetadataScript`].
//!
//! ```xml
//! <?xml version="1.0" encoding="UTF-8"?>
//! <codeMetadata version="1.0" interface="Garage" sourceFile="Garage.java" sourceType="java">
//!   <method name="serviceVehicle">
//!     <description>optional free text</description>
//!     <keyword term="service" language="en" source="http://...">definition</keyword>
//!     <parameter name="carType">
//!       <keyword term="car" language="en" source="http://...">definition</keyword>
//!     </parameter>
//!   </method>
//! </codeMetadata>
//! ```
//!
//! Output is UTF-8 with LF line endings and two-space indentation. Elements
//! without children are self-closing.

use std::fmt::Write;

use roxmltree::{Document, Node};

use super::{KeywordAnnotation, MetadataScript, MethodEntry, ParameterEntry, ScriptError};
use crate::parser::SourceType;

pub const SCRIPT_VERSION: &str = "1.0";

fn escape_text(s: &str, out: &mut String) {
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '\r' => out.push_str("&#13;"),
            c => out.push(c),
        }
    }
}

fn escape_attr(s: &str, out: &mut String) {
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\t' => out.push_str("&#9;"),
            '\n' => out.push_str("&#10;"),
            '\r' => out.push_str("&#13;"),
            c => out.push(c),
        }
    }
}

fn open_tag(out: &mut String, indent: usize, name: &str, attrs: &[(&str, &str)]) {
    for _ in 0..indent {
        out.push_str("  ");
    }
    out.push('<');
    out.push_str(name);
    for (k, v) in attrs {
        let _ = write!(out, " {k}=\"");
        escape_attr(v, out);
        out.push('"');
    }
}

fn close_tag(out: &mut String, indent: usize, name: &str) {
    for _ in 0..indent {
        out.push_str("  ");
    }
    let _ = writeln!(out, "</{name}>");
}

fn write_keyword(out: &mut String, indent: usize, k: &KeywordAnnotation) {
    open_tag(
        out,
        indent,
        "keyword",
        &[("term", &k.term), ("language", &k.language), ("source", &k.source)],
    );
    out.push('>');
    escape_text(&k.definition, out);
    out.push_str("</keyword>\n");
}

impl MetadataScript {
    pub fn to_xml(&self) -> String {
        let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        open_tag(
            &mut out,
            0,
            "codeMetadata",
            &[
                ("version", SCRIPT_VERSION),
                ("interface", &self.interface_name),
                ("sourceFile", &self.source_file),
                ("sourceType", self.source_type.as_str()),
            ],
        );
        if self.methods.is_empty() {
            out.push_str("/>\n");
            return out;
        }
        out.push_str(">\n");
        for m in &self.methods {
            open_tag(&mut out, 1, "method", &[("name", &m.name)]);
            if m.description.is_none() && m.keywords.is_empty() && m.parameters.is_empty() {
                out.push_str("/>\n");
                continue;
            }
            out.push_str(">\n");
            if let Some(d) = &m.description {
                open_tag(&mut out, 2, "description", &[]);
                out.push('>');
                escape_text(d, &mut out);
                out.push_str("</description>\n");
            }
            for k in &m.keywords {
                write_keyword(&mut out, 2, k);
            }
            for p in &m.parameters {
                open_tag(&mut out, 2, "parameter", &[("name", &p.name)]);
                if p.keywords.is_empty() {
                    out.push_str("/>\n");
                    continue;
                }
                out.push_str(">\n");
                for k in &p.keywords {
                    write_keyword(&mut out, 3, k);
                }
                close_tag(&mut out, 2, "parameter");
            }
            close_tag(&mut out, 1, "method");
        }
        close_tag(&mut out, 0, "codeMetadata");
        out
    }

    pub fn from_xml(text: &str) -> Result<Self, ScriptError> {
        let doc = Document::parse(text)
            .map_err(|e| ScriptError::Schema(format!("document (malformed XML: {e})")))?;
        let root = doc.root_element();
        if root.tag_name().name() != "codeMetadata" {
            return Err(ScriptError::Schema(format!(
                "codeMetadata (found root element {})",
                root.tag_name().name()
            )));
        }
        let version = required(root, "codeMetadata", "version")?;
        if version != SCRIPT_VERSION {
            return Err(ScriptError::Schema(format!(
                "codeMetadata/@version (unsupported version {version:?})"
            )));
        }
        let interface_name = required(root, "codeMetadata", "interface")?.to_string();
        let source_file = required(root, "codeMetadata", "sourceFile")?.to_string();
        let source_type = SourceType::from_name(required(root, "codeMetadata", "sourceType")?)
            .ok_or_else(|| ScriptError::Schema("codeMetadata/@sourceType".into()))?;

        let mut methods: Vec<MethodEntry> = Vec::new();
        for node in elements(root, "codeMetadata")? {
            expect_name(node, "method", "codeMetadata")?;
            let method = read_method(node)?;
            if methods.iter().any(|m| m.name == method.name) {
                return Err(ScriptError::Schema(format!(
                    "method/@name (duplicate method {})",
                    method.name
                )));
            }
            methods.push(method);
        }
        Ok(Self {
            interface_name,
            source_file,
            source_type,
            methods,
        })
    }
}

fn required<'a>(node: Node<'a, '_>, element: &str, attr: &str) -> Result<&'a str, ScriptError> {
    node.attribute(attr)
        .ok_or_else(|| ScriptError::Schema(format!("{element}/@{attr}")))
}

fn expect_name(node: Node, expected: &str, parent: &str) -> Result<(), ScriptError> {
    if node.tag_name().name() == expected {
        Ok(())
    } else {
        Err(ScriptError::Schema(format!(
            "{parent} (unexpected child element {})",
            node.tag_name().name()
        )))
    }
}

/// Element children of a container; non-whitespace text is an error.
fn elements<'a, 'input>(
    node: Node<'a, 'input>,
    label: &str,
) -> Result<Vec<Node<'a, 'input>>, ScriptError> {
    let mut out = Vec::new();
    for child in node.children() {
        if child.is_element() {
            out.push(child);
        } else if child.is_text() && !child.text().unwrap_or_default().trim().is_empty() {
            return Err(ScriptError::Schema(format!("{label} (unexpected text)")));
        }
    }
    Ok(out)
}

/// Text content of a leaf element; child elements are an error.
fn leaf_text(node: Node, label: &str) -> Result<String, ScriptError> {
    let mut text = String::new();
    for child in node.children() {
        if child.is_element() {
            return Err(ScriptError::Schema(format!("{label} (unexpected child element)")));
        }
        if let Some(t) = child.text() {
            text.push_str(t);
        }
    }
    Ok(text)
}

fn read_keyword(node: Node) -> Result<KeywordAnnotation, ScriptError> {
    let term = required(node, "keyword", "term")?;
    let language = required(node, "keyword", "language")?;
    let source = required(node, "keyword", "source")?;
    let definition = leaf_text(node, "keyword")?;
    KeywordAnnotation::new(term, language, source, &definition)
        .map_err(|e| ScriptError::Schema(format!("keyword ({e})")))
}

fn read_method(node: Node) -> Result<MethodEntry, ScriptError> {
    let mut method = MethodEntry::new(required(node, "method", "name")?);
    for child in elements(node, "method")? {
        match child.tag_name().name() {
            "description" => {
                if method.description.is_some() {
                    return Err(ScriptError::Schema("description (repeated)".into()));
                }
                method.description = Some(leaf_text(child, "description")?);
            }
            "keyword" => method.keywords.push(read_keyword(child)?),
            "parameter" => {
                let name = required(child, "parameter", "name")?;
                if method.parameter(name).is_some() {
                    return Err(ScriptError::Schema(format!(
                        "parameter/@name (duplicate parameter {name})"
                    )));
                }
                let mut entry = ParameterEntry {
                    name: name.to_string(),
                    keywords: Vec::new(),
                };
                for k in elements(child, "parameter")? {
                    expect_name(k, "keyword", "parameter")?;
                    entry.keywords.push(read_keyword(k)?);
                }
                method.parameters.push(entry);
            }
            other => {
                return Err(ScriptError::Schema(format!(
                    "method (unexpected child element {other})"
                )))
            }
        }
    }
    Ok(method)
}
