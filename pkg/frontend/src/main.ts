/** Browser entry point: mounts the workbench onto #workbench.
 *
 * The service base URL defaults to the page origin; override with
 * ?service=http://host:port when the API runs elsewhere.
 */

import { WorkbenchApp } from "./app.js";
import { WorkbenchClient } from "./client.js";

const params = new URLSearchParams(window.location.search);
const base = params.get("service") ?? window.location.origin;
const root = document.getElementById("workbench");
if (root !== null) {
  const app = new WorkbenchApp(root, new WorkbenchClient(base));
  void app.start();
}
