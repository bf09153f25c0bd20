import './style.css';
import { HttpApi } from './api';
import { Dashboard } from './app';

// Single configuration knob: the service base URL. Default goes through
// the dev-server proxy (same origin); override with ?api=http://host:port.
const base = new URLSearchParams(window.location.search).get('api') ?? '';

const root = document.getElementById('app');
if (root) {
  void new Dashboard(root, new HttpApi(base)).init();
}
