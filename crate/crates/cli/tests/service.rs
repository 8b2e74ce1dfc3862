use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use subshift_cli::service::router;
use tower::ServiceExt;

async fn send(req: Request<Body>) -> (StatusCode, Vec<u8>) {
    let resp = router().oneshot(req).await.unwrap();
    let status = resp.status();
    (status, resp.into_body().collect().await.unwrap().to_bytes().to_vec())
}

async fn post(body: impl Into<Body>) -> (StatusCode, Value) {
    let req = Request::post("/api/analyze").header("content-type", "application/json").body(body.into()).unwrap();
    let (s, b) = send(req).await;
    // the body-size rejection comes from axum as plain text
    (s, serde_json::from_slice(&b).unwrap_or(Value::Null))
}

#[tokio::test]
async fn health() {
    let (s, b) = send(Request::get("/health").body(Body::empty()).unwrap()).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(serde_json::from_slice::<Value>(&b).unwrap(), json!({"status": "ok"}));
}

#[tokio::test]
async fn thue_morse_three_presentations() {
    let (s, v) = post(json!({"sub": "01,10", "options": {"cohomology": "all"}}).to_string()).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["schema"], 1);
    for m in ["bd", "ap", "proper"] {
        assert_eq!(v["cohomology"][m]["status"], "ok");
        assert_eq!(v["cohomology"][m]["value"]["total_rank"], 2);
    }
}

#[tokio::test]
async fn platinum_mean_words() {
    let (s, v) = post(json!({"sub": "0001,001", "options": {"words": [2, 3]}}).to_string()).await;
    assert_eq!(s, StatusCode::OK);
    let words = &v["words"]["value"];
    assert_eq!(words[0]["words"], json!(["00", "01", "10"]));
    assert_eq!(words[1]["words"], json!(["000", "001", "010", "100"]));
}

#[tokio::test]
async fn error_statuses() {
    assert_eq!(post(json!({"sub": "01,"}).to_string()).await.0, StatusCode::BAD_REQUEST);
    assert_eq!(post("{not json").await.0, StatusCode::BAD_REQUEST);
    assert_eq!(post(json!({"sub": "01,0", "options": {"bogus": 1}}).to_string()).await.0, StatusCode::BAD_REQUEST);

    let (s, v) = post(json!({"sub": "0", "options": {"pisot": true}}).to_string()).await;
    assert_eq!(s, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(v["refusals"][0]["stage"], "pisot");
    assert_eq!(v["refusals"][0]["kind"], "periodic");
    assert_eq!(v["report"]["pisot"]["status"], "refused");

    assert_eq!(post(json!({"sub": "01,0", "options": {"complexity": 1000}}).to_string()).await.0, StatusCode::PAYLOAD_TOO_LARGE);
    let huge = format!("{},0", "0".repeat(5000));
    assert_eq!(post(json!({"sub": huge}).to_string()).await.0, StatusCode::PAYLOAD_TOO_LARGE);
    assert_eq!(post(vec![b' '; 100 * 1024]).await.0, StatusCode::PAYLOAD_TOO_LARGE);
}

#[tokio::test]
async fn graph_endpoint() {
    let (s, b) = send(Request::get("/api/graph?sub=0001,001&kind=ap&format=dot").body(Body::empty()).unwrap()).await;
    assert_eq!(s, StatusCode::OK);
    let dot = String::from_utf8(b).unwrap();
    assert!(dot.starts_with("digraph AP"));
    assert_eq!(dot.matches("->").count(), 4);
    let (s, _) = send(Request::get("/api/graph?sub=01,0&kind=xx").body(Body::empty()).unwrap()).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    let (s, b) = send(Request::get("/api/graph?sub=01,10&kind=bd").body(Body::empty()).unwrap()).await;
    assert_eq!(s, StatusCode::OK);
    assert!(String::from_utf8(b).unwrap().starts_with("digraph BD"));
}

#[tokio::test]
async fn service_matches_library() {
    let (_, v) = post(json!({"sub": "01,02,0", "options": {"pisot": true}}).to_string()).await;
    let report: subshift::report::AnalysisReport = serde_json::from_value(v).unwrap();
    let options = subshift::report::AnalysisOptions { pisot: true, word_budget: Some(2_000_000), ..Default::default() };
    let direct = subshift::report::analyze(&subshift::Substitution::parse("01,02,0").unwrap(), &options).unwrap();
    assert_eq!(report, direct);
}
