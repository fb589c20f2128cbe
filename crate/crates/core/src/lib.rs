//! Dictionary-backed semantic descriptions for service interfaces.
//!
//! Source files (Java declarations or WSDL port types) are parsed into an
//! [`InterfaceModel`], their method and parameter names are split into
//! keywords, and a human picks standard dictionary definitions for those
//! keywords. The picks accumulate in a [`MetadataScript`] which is saved as
//! XML and read back by other programs through [`MetadataReader`]. The
//! [`matcher`] module uses the enriched scripts to rank candidate services
//! against a request.

pub mod dictionary;
pub mod matcher;
pub mod metadata;
pub mod parser;
pub mod reader;
pub mod tokenizer;

pub use dictionary::{DefinitionRecord, DictionaryError, Gateway, ProviderConfig, ProviderKind};
pub use matcher::{
    ConceptMatch, ConceptRequirement, MatchConfig, MatchError, MatchKind, MatchReport,
    MatchRequest,
};
pub use metadata::{AnnotationTarget, KeywordAnnotation, MetadataScript, ScriptError};
pub use parser::{InterfaceModel, MethodDecl, ParameterDecl, ParseError, SourceType};
pub use reader::{MetadataReader, ReaderError};
pub use tokenizer::{tokenize, Token, TokenizeError};
