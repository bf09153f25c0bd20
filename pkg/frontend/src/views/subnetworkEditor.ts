// Popup editor for named, disjoint ROI groups. The server is the only
// validator: rejected drafts (overlaps, unknown ids) surface inline and
// the draft stays editable. Applied configs can be saved under a name in
// localStorage and re-loaded later.

import type { Api, SubnetworkConfigPayload, SubnetworkDef } from '../api';
import { ApiRequestError } from '../api';

const STORAGE_KEY = 'bandnet.subnetworkConfigs';

function parseMembers(text: string): number[] {
  return text
    .split(/[\s,;]+/)
    .filter((t) => t.length)
    .map((t) => Number(t));
}

export class SubnetworkEditor {
  private readonly root: HTMLDivElement;
  private readonly groupList: HTMLDivElement;
  private readonly errorEl: HTMLDivElement;
  private readonly nameInput: HTMLInputElement;
  private readonly savedSelect: HTMLSelectElement;

  constructor(
    container: HTMLElement,
    private readonly api: Api,
    private readonly onApplied: (config: SubnetworkConfigPayload) => void,
    private readonly storage: Storage = window.localStorage,
  ) {
    this.root = document.createElement('div');
    this.root.className = 'subnetwork-editor hidden';

    const heading = document.createElement('h3');
    heading.textContent = 'Subnetworks';
    this.root.appendChild(heading);

    this.nameInput = document.createElement('input');
    this.nameInput.className = 'config-name';
    this.nameInput.placeholder = 'configuration name';
    this.nameInput.value = 'session';
    this.root.appendChild(this.nameInput);

    this.groupList = document.createElement('div');
    this.groupList.className = 'group-list';
    this.root.appendChild(this.groupList);

    this.errorEl = document.createElement('div');
    this.errorEl.className = 'editor-error hidden';
    this.root.appendChild(this.errorEl);

    const actions = document.createElement('div');
    actions.className = 'editor-actions';
    const addBtn = this.button('add group', () => this.addGroup());
    const applyBtn = this.button('apply', () => void this.apply());
    const saveBtn = this.button('save', () => this.saveCurrent());
    const closeBtn = this.button('close', () => this.hide());
    this.savedSelect = document.createElement('select');
    this.savedSelect.className = 'saved-configs';
    this.savedSelect.addEventListener('change', () => this.loadSaved(this.savedSelect.value));
    actions.append(addBtn, applyBtn, saveBtn, this.savedSelect, closeBtn);
    this.root.appendChild(actions);

    container.appendChild(this.root);
    this.refreshSavedList();
    this.addGroup();
  }

  private button(label: string, onClick: () => void): HTMLButtonElement {
    const btn = document.createElement('button');
    btn.type = 'button';
    btn.textContent = label;
    btn.dataset.action = label.replace(' ', '-');
    btn.addEventListener('click', onClick);
    return btn;
  }

  show(): void {
    this.root.classList.remove('hidden');
  }

  hide(): void {
    this.root.classList.add('hidden');
  }

  addGroup(name = '', members = ''): void {
    const row = document.createElement('div');
    row.className = 'group-row';
    const nameInput = document.createElement('input');
    nameInput.className = 'group-name';
    nameInput.placeholder = 'group name';
    nameInput.value = name;
    const membersInput = document.createElement('input');
    membersInput.className = 'group-members';
    membersInput.placeholder = 'roi ids, e.g. 1, 4, 9';
    membersInput.value = members;
    const remove = this.button('remove', () => row.remove());
    row.append(nameInput, membersInput, remove);
    this.groupList.appendChild(row);
  }

  /** Current editable state, exactly what apply() would send. */
  draft(): SubnetworkConfigPayload {
    const subnetworks: SubnetworkDef[] = [];
    this.groupList.querySelectorAll('.group-row').forEach((row) => {
      const name = (row.querySelector('.group-name') as HTMLInputElement).value.trim();
      const members = parseMembers(
        (row.querySelector('.group-members') as HTMLInputElement).value,
      );
      if (name || members.length) {
        subnetworks.push({ name: name || `group ${subnetworks.length + 1}`, members });
      }
    });
    return { name: this.nameInput.value.trim() || 'session', subnetworks };
  }

  setDraft(config: SubnetworkConfigPayload): void {
    this.nameInput.value = config.name;
    this.groupList.replaceChildren();
    for (const sub of config.subnetworks) {
      this.addGroup(sub.name, sub.members.join(', '));
    }
  }

  async apply(): Promise<void> {
    this.errorEl.classList.add('hidden');
    const draft = this.draft();
    try {
      const stored = await this.api.putSubnetworks(draft);
      this.onApplied(stored);
    } catch (err) {
      const message = err instanceof ApiRequestError ? err.message : String(err);
      this.errorEl.textContent = message;
      this.errorEl.classList.remove('hidden');
    }
  }

  private savedConfigs(): Record<string, SubnetworkConfigPayload> {
    try {
      return JSON.parse(this.storage.getItem(STORAGE_KEY) ?? '{}');
    } catch {
      return {};
    }
  }

  saveCurrent(): void {
    const draft = this.draft();
    const configs = this.savedConfigs();
    configs[draft.name] = draft;
    this.storage.setItem(STORAGE_KEY, JSON.stringify(configs));
    this.refreshSavedList(draft.name);
  }

  loadSaved(name: string): void {
    const config = this.savedConfigs()[name];
    if (config) this.setDraft(config);
  }

  private refreshSavedList(selected = ''): void {
    const names = Object.keys(this.savedConfigs()).sort();
    this.savedSelect.replaceChildren(
      new Option('saved configs...', '', true, selected === ''),
      ...names.map((n) => new Option(n, n, false, n === selected)),
    );
  }

  get element(): HTMLDivElement {
    return this.root;
  }

  get errorElement(): HTMLDivElement {
    return this.errorEl;
  }
}
