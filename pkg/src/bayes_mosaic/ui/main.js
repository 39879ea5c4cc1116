/** Browser entry point: mount the explorer on the page's #app element. */
import { createApp } from "./app.js";
const root = document.getElementById("app");
if (root) {
    void createApp(root, {});
}
