//! Transport-independent request handling for the `/api/v1` endpoints.

use serde::Serialize;

use super::{
    analyze_document, build_document, corpus, invariants, regularity_document, reproducer_id, to_json, ApiError, PatchworkDocument,
    RegularityOp,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Response {
    pub status: u16,
    pub body: String,
}

impl Response {
    fn ok<T: Serialize>(value: &T) -> Self {
        Response { status: 200, body: to_json(value) }
    }

    fn error(e: &ApiError) -> Self {
        Response { status: e.status, body: to_json(e) }
    }
}

fn query_param<'a>(query: &'a str, key: &str) -> Option<&'a str> {
    query.split('&').filter_map(|kv| kv.split_once('=')).find(|(k, _)| *k == key).map(|(_, v)| v)
}

fn parse_u32(query: &str, key: &str) -> Result<u32, ApiError> {
    let raw = query_param(query, key).ok_or_else(|| {
        ApiError::bad_request("missing_parameter", format!("query parameter {key} is required"), Some(format!("?{key}")))
    })?;
    raw.parse().map_err(|_| ApiError::bad_request("bad_parameter", format!("{key}={raw} is not a nonnegative integer"), Some(format!("?{key}"))))
}

fn document(body: &[u8]) -> Result<PatchworkDocument, ApiError> {
    let text = std::str::from_utf8(body).map_err(|_| ApiError::bad_request("malformed_document", "body is not UTF-8", Some(String::new())))?;
    PatchworkDocument::parse(text)
}

fn route(method: &str, path: &str, query: &str, body: &[u8]) -> Result<Response, ApiError> {
    let not_allowed = || ApiError { status: 405, ..ApiError::bad_request("method_not_allowed", format!("{method} {path}"), None) };
    match path.trim_end_matches('/') {
        "/api/v1/analyze" => {
            if method != "POST" {
                return Err(not_allowed());
            }
            let doc = document(body)?;
            let a = analyze_document(&doc)?;
            if a.is_anomalous() {
                return Err(ApiError::anomaly(a.anomaly_summary(), reproducer_id(&doc)));
            }
            Ok(Response::ok(&a))
        }
        "/api/v1/build" => {
            if method != "POST" {
                return Err(not_allowed());
            }
            Ok(Response::ok(&build_document(&document(body)?)?))
        }
        "/api/v1/regularity" => {
            if method != "POST" {
                return Err(not_allowed());
            }
            let op: RegularityOp = query_param(query, "op").unwrap_or("check").parse()?;
            let doc = document(body)?;
            regularity_document(&doc, op).map(|r| Response::ok(&r)).map_err(|mut e| {
                if e.is_anomaly() {
                    e.reproducer = Some(reproducer_id(&doc));
                }
                e
            })
        }
        "/api/v1/invariants" => {
            if method != "GET" {
                return Err(not_allowed());
            }
            let (n, d) = (parse_u32(query, "n")?, parse_u32(query, "d")?);
            Ok(Response::ok(&*invariants(n, d).map_err(|e| e.at("?n"))?))
        }
        "/api/v1/examples" => {
            if method != "GET" {
                return Err(not_allowed());
            }
            Ok(Response::ok(&corpus::examples()))
        }
        p => match p.strip_prefix("/api/v1/examples/") {
            Some(id) if method == "GET" => match corpus::example(id) {
                Some(doc) => Ok(Response::ok(&doc)),
                None => Err(ApiError { status: 404, ..ApiError::bad_request("not_found", format!("no example {id:?}"), None) }),
            },
            Some(_) => Err(not_allowed()),
            None => Err(ApiError { status: 404, ..ApiError::bad_request("not_found", format!("no endpoint {path}"), None) }),
        },
    }
}

/// Handles one request. `target` is the path with an optional query string.
pub fn handle(method: &str, target: &str, body: &[u8]) -> Response {
    let (path, query) = target.split_once('?').unwrap_or((target, ""));
    route(method, path, query, body).unwrap_or_else(|e| Response::error(&e))
}
