/**
 * Entry point. Configuration comes from the URL:
 *   ?api=http://127.0.0.1:8100   service base URL (default: same origin)
 *   ?course=nlp-fundamentals     course id
 *   ?module=module-2             current module tag
 *   ?config=A|B|C                resource configuration (default B)
 */

import { BladeClient, SessionConfig } from "./api";
import { BladeApp } from "./app";
import "./style.css";

const params = new URLSearchParams(window.location.search);
const config = (params.get("config") ?? "B") as SessionConfig;
const client = new BladeClient(params.get("api") ?? "");
const root = document.getElementById("app");

if (root) {
  const app = new BladeApp(root, client);
  void app.start({
    courseId: params.get("course") ?? "nlp-fundamentals",
    moduleTag: params.get("module"),
    config: ["A", "B", "C"].includes(config) ? config : "B",
  });
}
