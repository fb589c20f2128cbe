//! `semdesc`: parse interfaces, look up definitions, annotate scripts, rank
//! services and run the annotation service.
//!
//! Exit codes: 0 success, 1 I/O or other failure, 2 parse/schema error,
//! 3 unsupported file type, 4 dictionary provider error, 5 invalid target,
//! pick or request, 6 output exists, 7 port in use. Errors are printed to
//! stderr as one line, `<Code>: <message>`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use semdesc_core::dictionary::{self, DictionaryError};
use semdesc_core::matcher::{self, MatchConfig, MatchKind, MatchReport};
use semdesc_core::parser::{self, extract_keywords, ParseError};
use semdesc_core::{
    AnnotationTarget, Gateway, InterfaceModel, KeywordAnnotation, MatchRequest, MetadataScript,
    ScriptError,
};
use semdesc_service::AppState;

#[derive(Parser)]
#[command(name = "semdesc", version, about = "Dictionary-backed semantic descriptions for service interfaces")]
struct Cli {
    /// Provider config file (JSON array); the built-in list is used otherwise.
    #[arg(long, global = true, env = "SEMDESC_PROVIDERS")]
    providers: Option<PathBuf>,
    /// Directory for cached dictionary lookups.
    #[arg(long, global = true, env = "SEMDESC_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a .java, .wsdl or .xml file and list its methods and keywords.
    Parse {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Look a term up in one dictionary provider.
    Lookup {
        term: String,
        #[arg(long)]
        provider: String,
        #[arg(long, default_value = "en")]
        language: String,
        #[arg(long)]
        json: bool,
    },
    /// Append a looked-up definition to a method or parameter of a script.
    Annotate {
        script: PathBuf,
        #[arg(long)]
        method: String,
        #[arg(long)]
        param: Option<String>,
        #[arg(long)]
        term: String,
        #[arg(long)]
        provider: String,
        #[arg(long, default_value = "en")]
        language: String,
        /// Which of the returned definitions to use.
        #[arg(long, default_value_t = 0)]
        pick: usize,
    },
    /// Create an empty script for a source file (`<stem>.metadata.xml`).
    Init {
        source: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
    /// Copy the script out of a service project directory.
    Export {
        project_dir: PathBuf,
        /// Destination file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
    /// Rank scripts against a request document.
    Match {
        #[arg(long)]
        request: PathBuf,
        #[arg(required = true)]
        scripts: Vec<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Run the HTTP annotation service.
    Serve {
        #[arg(long, env = "SEMDESC_PORT", default_value_t = 8080)]
        port: u16,
        #[arg(long, env = "SEMDESC_DATA_DIR", default_value = "semdesc-data")]
        data_dir: PathBuf,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// Directory of built UI assets to serve at `/`.
        #[arg(long, env = "SEMDESC_UI_DIR")]
        ui_dir: Option<PathBuf>,
    },
}

#[derive(Debug)]
struct CliError {
    exit: u8,
    code: &'static str,
    message: String,
}

impl CliError {
    fn new(exit: u8, code: &'static str, message: impl Into<String>) -> Self {
        Self {
            exit,
            code,
            message: message.into(),
        }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Self::new(1, "IoError", format!("{}: {e}", path.display()))
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        match e {
            ParseError::UnsupportedFileType(_) => Self::new(3, "UnsupportedFileType", e.to_string()),
            ParseError::Syntax { .. } => Self::new(2, "ParseError", e.to_string()),
            ParseError::Io { .. } => Self::new(1, "IoError", e.to_string()),
        }
    }
}

impl From<DictionaryError> for CliError {
    fn from(e: DictionaryError) -> Self {
        let code = match e {
            DictionaryError::UnknownProvider(_) => "UnknownProvider",
            DictionaryError::UnsupportedLanguage { .. } => "UnsupportedLanguage",
            DictionaryError::ProviderUnavailable { .. } => "ProviderUnavailable",
            DictionaryError::EmptyTerm => "EmptyTerm",
            DictionaryError::Config(_) | DictionaryError::Format { .. } => "ConfigError",
            DictionaryError::Io { .. } => return Self::new(1, "IoError", e.to_string()),
        };
        Self::new(4, code, e.to_string())
    }
}

impl From<ScriptError> for CliError {
    fn from(e: ScriptError) -> Self {
        match e {
            ScriptError::Schema(_) => Self::new(2, "SchemaError", e.to_string()),
            ScriptError::UnknownTarget(_) => Self::new(5, "UnknownTarget", e.to_string()),
            ScriptError::InvalidAnnotation(_) => Self::new(5, "InvalidAnnotation", e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}: {}", e.code, e.message);
            ExitCode::from(e.exit)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Parse { ref file, json } => parse(file, json),
        Command::Lookup {
            ref term,
            ref provider,
            ref language,
            json,
        } => lookup(&gateway(&cli)?, term, provider, language, json),
        Command::Annotate {
            ref script,
            ref method,
            ref param,
            ref term,
            ref provider,
            ref language,
            pick,
        } => {
            let target = AnnotationTarget {
                method_name: method.clone(),
                parameter_name: param.clone(),
            };
            annotate(&gateway(&cli)?, script, &target, term, provider, language, pick)
        }
        Command::Init { ref source, ref out, force } => init(source, out.as_deref(), force),
        Command::Export {
            ref project_dir,
            ref out,
            force,
        } => export(project_dir, out.as_deref(), force),
        Command::Match {
            ref request,
            ref scripts,
            json,
        } => run_match(request, scripts, json),
        Command::Serve {
            port,
            ref data_dir,
            ref host,
            ref ui_dir,
        } => serve(gateway(&cli)?, host, port, data_dir, ui_dir.clone()),
    }
}

fn gateway(cli: &Cli) -> Result<Gateway, CliError> {
    let configs = match &cli.providers {
        Some(path) => dictionary::load_config(path)?,
        None => dictionary::default_config(),
    };
    let cache = cli
        .cache_dir
        .clone()
        .unwrap_or_else(|| std::env::temp_dir().join("semdesc-cache"));
    Ok(Gateway::new(configs, cache)?)
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("value serializes")
}

fn render_model(model: &InterfaceModel) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} ({}) from {}",
        model.interface_name, model.source_type, model.source_file
    );
    for m in &model.methods {
        let params: Vec<&str> = m.parameters.iter().map(|p| p.name.as_str()).collect();
        let _ = writeln!(out, "  {}({})", m.name, params.join(", "));
        let words: Vec<&str> = m.tokens.iter().map(|t| t.as_str()).collect();
        let _ = writeln!(out, "    keywords: {}", words.join(" "));
        for p in &m.parameters {
            let words: Vec<&str> = p.tokens.iter().map(|t| t.as_str()).collect();
            let _ = writeln!(out, "    {}: {}", p.name, words.join(" "));
        }
    }
    let all: Vec<String> = extract_keywords(model).into_iter().collect();
    let _ = writeln!(out, "keywords: {}", all.join(", "));
    out
}

fn parse(file: &Path, json: bool) -> Result<(), CliError> {
    let model = parser::parse_file(file)?;
    if json {
        println!("{}", to_json(&model));
    } else {
        print!("{}", render_model(&model));
    }
    Ok(())
}

fn lookup(gateway: &Gateway, term: &str, provider: &str, language: &str, json: bool) -> Result<(), CliError> {
    let records = gateway.lookup(provider, term, language)?;
    if json {
        println!("{}", to_json(&records));
    } else if records.is_empty() {
        println!("no definitions");
    } else {
        for (i, r) in records.iter().enumerate() {
            println!("{i}. {} [{}] {}", r.definition, r.language, r.source);
        }
    }
    Ok(())
}

fn read_script(path: &Path) -> Result<MetadataScript, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    Ok(MetadataScript::from_xml(&text)?)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn annotate(
    gateway: &Gateway,
    script_path: &Path,
    target: &AnnotationTarget,
    term: &str,
    provider: &str,
    language: &str,
    pick: usize,
) -> Result<(), CliError> {
    let mut script = read_script(script_path)?;
    if script.keywords_for(target).is_none() {
        return Err(CliError::new(5, "UnknownTarget", format!("no target {}", target.label())));
    }
    let records = gateway.lookup(provider, term, language)?;
    let record = records.get(pick).ok_or_else(|| {
        CliError::new(
            5,
            "PickOutOfRange",
            format!("--pick {pick} but {} definition(s) returned for {term:?}", records.len()),
        )
    })?;
    let annotation = KeywordAnnotation::try_from(record)?;
    let count = script.add_annotation(target, annotation)?;
    write_file(script_path, &script.to_xml())?;
    println!(
        "{} :: {} | {} | {} | {}",
        target.label(),
        record.term,
        record.language,
        record.source,
        record.definition
    );
    println!("{count} annotation(s) in {}", script_path.display());
    Ok(())
}

fn default_script_path(source: &Path) -> PathBuf {
    let stem = source
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    source.with_file_name(format!("{stem}.metadata.xml"))
}

fn refuse_overwrite(path: &Path, force: bool) -> Result<(), CliError> {
    if path.exists() && !force {
        return Err(CliError::new(
            6,
            "OutputExists",
            format!("{} exists; pass --force to overwrite", path.display()),
        ));
    }
    Ok(())
}

fn init(source: &Path, out: Option<&Path>, force: bool) -> Result<(), CliError> {
    parser::detect_source_type(source)?;
    let out = out.map(Path::to_path_buf).unwrap_or_else(|| default_script_path(source));
    refuse_overwrite(&out, force)?;
    let model = parser::parse_file(source)?;
    let script = MetadataScript::new(&model);
    write_file(&out, &script.to_xml())?;
    println!("{} ({} method entries)", out.display(), script.methods.len());
    Ok(())
}

fn export(project_dir: &Path, out: Option<&Path>, force: bool) -> Result<(), CliError> {
    let script = read_script(&project_dir.join("script.xml"))?;
    let xml = script.to_xml();
    match out {
        Some(path) => {
            refuse_overwrite(path, force)?;
            write_file(path, &xml)?;
            println!("{}", path.display());
        }
        None => print!("{xml}"),
    }
    Ok(())
}

/// `site1.metadata.xml` → `site1`.
fn service_id(path: &Path) -> String {
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = name.strip_suffix(".xml").unwrap_or(&name);
    name.strip_suffix(".metadata").unwrap_or(name).to_string()
}

fn score(x: f64) -> String {
    let s = format!("{x:.3}");
    let s = s.trim_end_matches('0');
    s.strip_suffix('.').map(|s| format!("{s}.0")).unwrap_or_else(|| s.to_string())
}

fn render_reports(reports: &[MatchReport]) -> String {
    let mut out = String::new();
    for (rank, r) in reports.iter().enumerate() {
        let _ = writeln!(out, "{}. {} {}", rank + 1, r.service_id, score(r.total_score));
        for c in &r.per_concept {
            let kind = match c.kind {
                MatchKind::Direct => "direct",
                MatchKind::Expansion => "expansion",
                MatchKind::None => "none",
            };
            let _ = write!(
                out,
                "   {} -> {} ({kind}) name {}",
                c.concept,
                c.matched_keyword.as_deref().unwrap_or("-"),
                score(c.name_score)
            );
            if let Some(d) = c.definition_score {
                let _ = write!(out, " definition {}", score(d));
            }
            let _ = writeln!(out, " combined {}", score(c.combined_score));
        }
    }
    out
}

fn run_match(request: &Path, scripts: &[PathBuf], json: bool) -> Result<(), CliError> {
    let text = std::fs::read_to_string(request).map_err(|e| CliError::io(request, e))?;
    let request = MatchRequest::from_json(&text).map_err(|e| CliError::new(5, "InvalidRequest", e.to_string()))?;
    let candidates = scripts
        .iter()
        .map(|p| Ok((service_id(p), read_script(p)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let reports = matcher::rank_services(&MatchConfig::DEFAULT, &request, &candidates)
        .map_err(|e| CliError::new(5, "InvalidRequest", e.to_string()))?;
    if json {
        println!("{}", to_json(&reports));
    } else {
        print!("{}", render_reports(&reports));
    }
    Ok(())
}

fn serve(
    gateway: Gateway,
    host: &str,
    port: u16,
    data_dir: &Path,
    ui_dir: Option<PathBuf>,
) -> Result<(), CliError> {
    tracing_subscriber::fmt().with_writer(std::io::stderr).init();
    std::fs::create_dir_all(data_dir).map_err(|e| CliError::io(data_dir, e))?;
    let state = AppState::open(data_dir, gateway)
        .map_err(|e| CliError::io(data_dir, e))?
        .with_ui_dir(ui_dir);
    let runtime = tokio::runtime::Runtime::new().map_err(|e| CliError::new(1, "IoError", e.to_string()))?;
    runtime.block_on(async move {
        let listener = tokio::net::TcpListener::bind((host, port))
            .await
            .map_err(|e| match e.kind() {
                std::io::ErrorKind::AddrInUse => CliError::new(7, "PortInUse", format!("{host}:{port}: {e}")),
                _ => CliError::new(1, "IoError", format!("{host}:{port}: {e}")),
            })?;
        let addr = listener.local_addr().map_err(|e| CliError::new(1, "IoError", e.to_string()))?;
        println!("listening on http://{addr}");
        semdesc_service::serve(listener, Arc::new(state))
            .await
            .map_err(|e| CliError::new(1, "IoError", e.to_string()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn service_ids_from_file_names() {
        assert_eq!(service_id(Path::new("fixtures/site1.metadata.xml")), "site1");
        assert_eq!(service_id(Path::new("other.xml")), "other");
        assert_eq!(service_id(Path::new("plain")), "plain");
    }

    #[test]
    fn score_formatting() {
        assert_eq!(score(0.95), "0.95");
        assert_eq!(score(0.625), "0.625");
        assert_eq!(score(1.0), "1.0");
        assert_eq!(score(0.0), "0.0");
    }

    #[test]
    fn default_script_name() {
        assert_eq!(
            default_script_path(Path::new("src/CarService.java")),
            PathBuf::from("src/CarService.metadata.xml")
        );
    }
}
