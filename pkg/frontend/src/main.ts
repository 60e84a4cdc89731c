import { start } from './app.js';

const root = document.getElementById('workbench');
if (root) {
  // served from the gateway under /app; API paths are origin-absolute
  start(root, '');
}
