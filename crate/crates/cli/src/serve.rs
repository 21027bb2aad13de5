//! The HTTP front end: every request is forwarded to the shared dispatcher.

use axum::body::Bytes;
use axum::http::{header, Method, StatusCode, Uri};
use axum::response::{IntoResponse, Response};
use axum::Router;

async fn dispatch(method: Method, uri: Uri, body: Bytes) -> Response {
    let target = uri.path_and_query().map(|p| p.as_str().to_owned()).unwrap_or_else(|| uri.path().to_owned());
    let r = tokio::task::spawn_blocking(move || patchwork::interface::handle(method.as_str(), &target, &body))
        .await
        .expect("request handler panicked");
    let status = StatusCode::from_u16(r.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
    (status, [(header::CONTENT_TYPE, "application/json")], r.body).into_response()
}

pub fn serve(host: &str, port: u16) -> std::io::Result<()> {
    let runtime = tokio::runtime::Builder::new_multi_thread().enable_all().build()?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind((host, port)).await?;
        // the first line tells scripts (and tests) which port was bound
        println!("listening on http://{}", listener.local_addr()?);
        axum::serve(listener, Router::new().fallback(dispatch)).await
    })
}
