//! WSDL 1.1 port type reader.
//!
//! Elements are matched on local names so any namespace prefix works. Message
//! parts are taken as they are; wrapped document/literal schemas are not
//! unwrapped.

use std::collections::HashMap;

use roxmltree::{Document, Node};

use super::{InterfaceModel, MethodDecl, ParameterDecl, ParseError, SourceType};

fn local_part(qname: &str) -> &str {
    qname.rsplit(':').next().unwrap_or(qname)
}

fn children<'a, 'input>(
    node: Node<'a, 'input>,
    name: &'static str,
) -> impl Iterator<Item = Node<'a, 'input>> {
    node.children()
        .filter(move |n| n.is_element() && n.tag_name().name() == name)
}

struct Part {
    name: String,
    declared_type: String,
}

pub fn parse_wsdl(text: &str, path: &str) -> Result<InterfaceModel, ParseError> {
    let doc = Document::parse(text)
        .map_err(|e| ParseError::syntax(path, format!("malformed XML: {e}")))?;
    let root = doc.root_element();

    let mut messages: HashMap<&str, Vec<Part>> = HashMap::new();
    for message in root
        .descendants()
        .filter(|n| n.is_element() && n.tag_name().name() == "message")
    {
        let Some(name) = message.attribute("name") else {
            continue;
        };
        let parts = children(message, "part")
            .map(|part| {
                let name = part.attribute("name").ok_or_else(|| {
                    ParseError::syntax(path, format!("part without a name in message {name}"))
                })?;
                let declared_type = part
                    .attribute("type")
                    .or_else(|| part.attribute("element"))
                    .unwrap_or_default();
                Ok(Part {
                    name: name.to_string(),
                    declared_type: declared_type.to_string(),
                })
            })
            .collect::<Result<Vec<_>, ParseError>>()?;
        messages.insert(name, parts);
    }

    let port_type = root
        .descendants()
        .find(|n| n.is_element() && n.tag_name().name() == "portType")
        .ok_or_else(|| ParseError::syntax(path, "no portType element found"))?;
    let interface_name = port_type
        .attribute("name")
        .ok_or_else(|| ParseError::syntax(path, "portType without a name"))?;

    let resolve = |op: &str, io: Node| -> Result<&Vec<Part>, ParseError> {
        let reference = io.attribute("message").ok_or_else(|| {
            ParseError::syntax(
                path,
                format!("{} of operation {op} has no message attribute", io.tag_name().name()),
            )
        })?;
        messages.get(local_part(reference)).ok_or_else(|| {
            ParseError::syntax(
                path,
                format!("operation {op} references missing message {reference}"),
            )
        })
    };

    let mut methods = Vec::new();
    for op in children(port_type, "operation") {
        let op_name = op
            .attribute("name")
            .ok_or_else(|| ParseError::syntax(path, "operation without a name"))?;
        let parameters = match children(op, "input").next() {
            Some(input) => resolve(op_name, input)?
                .iter()
                .map(|p| {
                    ParameterDecl::new(&p.name, p.declared_type.clone())
                        .map_err(|e| ParseError::syntax(path, e.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?,
            None => Vec::new(),
        };
        let return_type = match children(op, "output").next() {
            Some(output) => resolve(op_name, output)?
                .first()
                .map(|p| p.declared_type.clone())
                .unwrap_or_default(),
            None => String::new(),
        };
        let method = MethodDecl::new(op_name, return_type, parameters)
            .map_err(|e| ParseError::syntax(path, e.to_string()))?;
        methods.push(method);
    }

    InterfaceModel::new(path, SourceType::Wsdl, interface_name, methods)
}
