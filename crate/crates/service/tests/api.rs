mod common;

use axum::http::StatusCode;
use common::{app, read_fixture, send};
use semdesc_core::matcher::{rank_services, MatchConfig};
use semdesc_core::{Gateway, MatchReport, MatchRequest, MetadataScript};
use serde_json::json;

async fn upload(app: &axum::Router, name: &str) -> serde_json::Value {
    let reply = send(
        app,
        "POST",
        "/projects",
        Some(json!({"filename": name, "content": read_fixture(name)})),
    )
    .await;
    assert_eq!(reply.status, StatusCode::CREATED, "{}", reply.text());
    reply.json()
}

#[tokio::test]
async fn upload_java_and_wsdl() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path());
    let java = upload(&app, "CarService.java").await;
    assert_eq!(java["model"]["interfaceName"], "CarService");
    assert_eq!(java["model"]["sourceType"], "java");
    assert_eq!(java["model"]["methods"].as_array().unwrap().len(), 3);
    assert_eq!(java["model"]["methods"][0]["tokens"], json!(["get", "car", "type"]));
    assert!(java["keywords"].as_array().unwrap().contains(&json!("vehicle")));
    assert_eq!(java["annotationCount"], 0);

    let wsdl = upload(&app, "garage.wsdl").await;
    assert_eq!(wsdl["model"]["methods"][0]["parameters"][0]["name"], "regNumber");

    let list = send(&app, "GET", "/projects", None).await.json();
    assert_eq!(list.as_array().unwrap().len(), 2);
    let id = java["id"].as_str().unwrap();
    let one = send(&app, "GET", &format!("/projects/{id}"), None).await.json();
    assert_eq!(one["id"], java["id"]);
}

#[tokio::test]
async fn upload_errors() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path());
    let txt = send(&app, "POST", "/projects", Some(json!({"filename": "notes.txt", "content": "hi"}))).await;
    assert_eq!(txt.status, StatusCode::UNSUPPORTED_MEDIA_TYPE);
    assert_eq!(txt.json()["error"], "UnsupportedFileType");
    let broken = send(
        &app,
        "POST",
        "/projects",
        Some(json!({"filename": "broken.wsdl", "content": read_fixture("broken.wsdl")})),
    )
    .await;
    assert_eq!(broken.status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(broken.json()["error"], "ParseError");
    assert_eq!(send(&app, "GET", "/projects/nope", None).await.status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn dictionaries_agree_with_gateway() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path());
    let providers = send(&app, "GET", "/dictionaries", None).await.json();
    let ids: Vec<_> = providers
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["id"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(ids, ["freedicts", "memidex", "synonymsdict", "local"]);
    assert_eq!(providers[0]["baseUrl"], "http://www.dicts.info/");
    assert_eq!(providers[3]["kind"], "local-file");

    let reply = send(&app, "GET", "/dictionaries/local/lookup?term=Vehicle&language=en", None).await;
    assert_eq!(reply.status, StatusCode::OK);
    let other = tempfile::tempdir().unwrap();
    let direct = Gateway::with_default_config(other.path()).unwrap().lookup("local", "vehicle", "en").unwrap();
    assert_eq!(reply.json(), serde_json::to_value(&direct).unwrap());
    assert_eq!(
        reply.json()[0]["definition"],
        "a car, lorry, bus, etc., for transporting people or goods on land"
    );

    let empty = send(&app, "GET", "/dictionaries/local/lookup?term=zzxqv", None).await;
    assert_eq!(empty.json(), json!([]));
    assert_eq!(
        send(&app, "GET", "/dictionaries/nope/lookup?term=car", None).await.status,
        StatusCode::NOT_FOUND
    );
    assert_eq!(
        send(&app, "GET", "/dictionaries/memidex/lookup?term=car", None).await.status,
        StatusCode::SERVICE_UNAVAILABLE
    );
    assert_eq!(
        send(&app, "GET", "/dictionaries/local/lookup?term=car&language=fr", None).await.status,
        StatusCode::BAD_REQUEST
    );
}

#[tokio::test]
async fn annotations_append_and_render() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path());
    let project = upload(&app, "CarService.java").await;
    let id = project["id"].as_str().unwrap();
    let url = format!("/projects/{id}/annotations");
    let note = |method: &str, param: Option<&str>, term: &str, def: &str| {
        json!({
            "target": {"methodName": method, "parameterName": param},
            "annotation": {"term": term, "language": "en", "source": "http://www.memidex.com/", "definition": def}
        })
    };

    let first = send(&app, "POST", &url, Some(note("serviceVehicle", None, "Service", "a routine inspection and maintenance of a vehicle"))).await;
    assert_eq!(first.status, StatusCode::OK);
    assert_eq!(first.json(), json!({"annotationCount": 1}));
    let second = send(&app, "POST", &url, Some(note("serviceVehicle", Some("carType"), "car", "a road vehicle"))).await;
    assert_eq!(second.json(), json!({"annotationCount": 2}));

    let bad_param = send(&app, "POST", &url, Some(note("serviceVehicle", Some("nope"), "car", "x"))).await;
    assert_eq!(bad_param.status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(bad_param.json()["error"], "UnknownTarget");
    let missing = send(&app, "POST", "/projects/ghost/annotations", Some(note("serviceVehicle", None, "x", "y"))).await;
    assert_eq!(missing.status, StatusCode::NOT_FOUND);

    let xml = send(&app, "GET", &format!("/projects/{id}/script?format=xml"), None).await;
    assert!(xml.content_type.clone().unwrap().starts_with("application/xml"));
    let script = MetadataScript::from_xml(&xml.text()).unwrap();
    assert_eq!(script.annotation_count(), 2);
    assert_eq!(script.method("serviceVehicle").unwrap().keywords[0].term, "service");
    let default = send(&app, "GET", &format!("/projects/{id}/script"), None).await;
    assert_eq!(default.body, xml.body);

    let display = send(&app, "GET", &format!("/projects/{id}/script?format=display"), None).await;
    assert!(display.content_type.clone().unwrap().starts_with("text/plain"));
    assert_eq!(display.text(), script.to_display());
    assert_eq!(display.text().lines().count(), 2);
    assert!(display.text().starts_with("serviceVehicle :: service | en | http://www.memidex.com/ | a routine"));

    let yaml = send(&app, "GET", &format!("/projects/{id}/script?format=yaml"), None).await;
    assert_eq!(yaml.status, StatusCode::BAD_REQUEST);
    let summary = send(&app, "GET", &format!("/projects/{id}"), None).await.json();
    assert_eq!(summary["annotationCount"], 2);
}

#[tokio::test]
async fn match_agrees_with_library() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path());
    let request: serde_json::Value = serde_json::from_str(&read_fixture("request.json")).unwrap();
    let body = json!({
        "concepts": request["concepts"],
        "candidates": [
            {"serviceId": "site2", "xml": read_fixture("site2.metadata.xml")},
            {"serviceId": "site1", "xml": read_fixture("site1.metadata.xml")},
        ]
    });
    let reply = send(&app, "POST", "/match", Some(body)).await;
    assert_eq!(reply.status, StatusCode::OK, "{}", reply.text());
    let reports: Vec<MatchReport> = serde_json::from_slice(&reply.body).unwrap();

    let library = rank_services(
        &MatchConfig::DEFAULT,
        &MatchRequest::from_json(&read_fixture("request.json")).unwrap(),
        &[
            ("site2".into(), MetadataScript::from_xml(&read_fixture("site2.metadata.xml")).unwrap()),
            ("site1".into(), MetadataScript::from_xml(&read_fixture("site1.metadata.xml")).unwrap()),
        ],
    )
    .unwrap();
    assert_eq!(reports, library);
    assert_eq!(reports[0].service_id, "site1");

    // default service id is the interface name
    let single = send(
        &app,
        "POST",
        "/match",
        Some(json!({"concepts": request["concepts"], "candidates": [{"xml": read_fixture("site1.metadata.xml")}]})),
    )
    .await
    .json();
    assert_eq!(single.as_array().unwrap().len(), 1);
    assert_eq!(single[0]["serviceId"], "MechanicService");
}

#[tokio::test]
async fn match_errors() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path());
    let site = read_fixture("site1.metadata.xml");
    let no_concepts = send(&app, "POST", "/match", Some(json!({"concepts": [], "candidates": [{"xml": site}]}))).await;
    assert_eq!(no_concepts.status, StatusCode::UNPROCESSABLE_ENTITY);
    let ghost = send(
        &app,
        "POST",
        "/match",
        Some(json!({"concepts": [{"concept": "car"}], "candidates": [{"projectId": "ghost"}]})),
    )
    .await;
    assert_eq!(ghost.status, StatusCode::NOT_FOUND);
    let no_candidates = send(&app, "POST", "/match", Some(json!({"concepts": [{"concept": "car"}], "candidates": []}))).await;
    assert_eq!(no_candidates.status, StatusCode::UNPROCESSABLE_ENTITY);
    let bad_xml = send(
        &app,
        "POST",
        "/match",
        Some(json!({"concepts": [{"concept": "car"}], "candidates": [{"xml": "<wrong/>"}]})),
    )
    .await;
    assert_eq!(bad_xml.status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(bad_xml.json()["error"], "SchemaError");
}

#[tokio::test]
async fn concurrent_annotations_on_one_project_all_land() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path());
    let project = upload(&app, "CarService.java").await;
    let id = project["id"].as_str().unwrap().to_string();
    let mut tasks = Vec::new();
    for i in 0..16 {
        let app = app.clone();
        let url = format!("/projects/{id}/annotations");
        tasks.push(tokio::spawn(async move {
            let body = json!({
                "target": {"methodName": "getCarType"},
                "annotation": {"term": format!("t{i}"), "language": "en", "source": "http://x.example/", "definition": "d"}
            });
            send(&app, "POST", &url, Some(body)).await.status
        }));
    }
    for t in tasks {
        assert_eq!(t.await.unwrap(), StatusCode::OK);
    }
    let xml = send(&app, "GET", &format!("/projects/{id}/script"), None).await.text();
    assert_eq!(MetadataScript::from_xml(&xml).unwrap().annotation_count(), 16);
    let on_disk = std::fs::read_to_string(dir.path().join("projects").join(&id).join("script.xml")).unwrap();
    assert_eq!(on_disk, xml);
}

#[tokio::test]
async fn restart_preserves_scripts() {
    let dir = tempfile::tempdir().unwrap();
    let id;
    let before;
    {
        let app = app(dir.path());
        let project = upload(&app, "garage.wsdl").await;
        id = project["id"].as_str().unwrap().to_string();
        let body = json!({
            "target": {"methodName": "checkVehicle", "parameterName": "regNumber"},
            "annotation": {"term": "number", "language": "de", "source": "http://x.example/", "definition": "Zahl \u{00fc}ber"}
        });
        send(&app, "POST", &format!("/projects/{id}/annotations"), Some(body)).await;
        before = send(&app, "GET", &format!("/projects/{id}/script"), None).await.body;
    }
    let app = app(dir.path());
    let after = send(&app, "GET", &format!("/projects/{id}/script"), None).await;
    assert_eq!(after.status, StatusCode::OK);
    assert_eq!(after.body, before);
}

#[tokio::test]
async fn root_answers_without_ui() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path());
    assert_eq!(send(&app, "GET", "/", None).await.status, StatusCode::OK);
}

#[tokio::test]
async fn serves_ui_assets_when_configured() {
    let dir = tempfile::tempdir().unwrap();
    let ui = dir.path().join("ui");
    std::fs::create_dir_all(&ui).unwrap();
    std::fs::write(ui.join("index.html"), "<html>panel</html>").unwrap();
    let gateway = Gateway::with_default_config(dir.path().join("cache")).unwrap();
    let state = semdesc_service::AppState::open(dir.path().join("data"), gateway)
        .unwrap()
        .with_ui_dir(Some(ui));
    let app = semdesc_service::router(std::sync::Arc::new(state));
    let page = send(&app, "GET", "/index.html", None).await;
    assert_eq!(page.status, StatusCode::OK);
    assert_eq!(page.text(), "<html>panel</html>");
    assert_eq!(send(&app, "GET", "/", None).await.text(), "<html>panel</html>");
    assert_eq!(send(&app, "GET", "/dictionaries", None).await.status, StatusCode::OK);
}
