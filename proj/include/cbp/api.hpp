#pragma once

#include <map>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "cbp/error.hpp"
#include "cbp/project.hpp"

namespace cbp {

struct ApiRequest {
    std::string method;  // GET, POST, PUT, PATCH
    std::string path;    // e.g. /v1/projects/p1/deduce
    std::map<std::string, std::string> query;
    std::string body;
};

struct ApiResponse {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
};

// 400 for bad input, 404 unknown ids, 409 operations the project status
// does not allow (including export of an incomplete process).
int http_status(ErrorCode code);

// Routes under /v1:
//   GET   /v1/projects                        list
//   POST  /v1/projects                        create {id?, literalStartRule?, defaultGatewayType?}
//   GET   /v1/projects/{id}                   summary
//   PUT   /v1/projects/{id}/network           network doc, JSON or XML
//   GET   /v1/projects/{id}/network           as JSON
//   POST  /v1/projects/{id}/deduce
//   GET   /v1/projects/{id}/facts             ?provenance=asserted|derived &rule= &subject= &predicate=
//   GET   /v1/projects/{id}/query             ?name= | ?q=  &format=json|xml
//   POST  /v1/projects/{id}/assemble
//   GET   /v1/projects/{id}/graph             ?format=json|xml
//   PATCH /v1/projects/{id}/gateways/{gid}    {"type": "..."}
//   GET   /v1/projects/{id}/completeness
//   POST  /v1/projects/{id}/export            ?pretty=true|false, BPMN body
//   GET   /v1/projects/{id}/export            last exported BPMN
//   GET   /v1/seed                            ?search= &concept=
//   GET   /v1/queries                         canned query names and text
class ApiService {
public:
    explicit ApiService(ProjectStore& store) : store_(store) {}

    // Never throws; failures become JSON error bodies.
    ApiResponse handle(const ApiRequest& req);

private:
    ApiResponse route(const ApiRequest& req);
    ProjectStore& store_;
};

nlohmann::json project_summary(const Project& p);

}  // namespace cbp
