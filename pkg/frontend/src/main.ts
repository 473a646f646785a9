import { loadAndStart } from "./app.js";

const root = document.getElementById("app");
if (root) {
  void loadAndStart(root, "/bundle.json");
}
