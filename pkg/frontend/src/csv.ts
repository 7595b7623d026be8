import * as fs from "fs";

export interface CsvTable {
  path: string;
  columns: string[];
  /** column name -> raw values, exactly as parsed (never transformed) */
  data: Map<string, number[]>;
  rows: number;
}

export class MissingColumnError extends Error {
  constructor(
    public readonly column: string,
    public readonly path: string,
  ) {
    super(`column '${column}' not found in ${path}`);
  }
}

export function parseCsv(path: string): CsvTable {
  const text = fs.readFileSync(path, "utf8");
  const lines = text.split("\n").filter((line) => line.length > 0);
  if (lines.length < 1) {
    throw new Error(`${path}: empty CSV`);
  }
  const columns = lines[0].split(",").map((s) => s.trim());
  const data = new Map<string, number[]>(columns.map((c) => [c, []]));
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== columns.length) {
      throw new Error(`${path}:${i + 1}: expected ${columns.length} cells, got ${cells.length}`);
    }
    for (let j = 0; j < columns.length; j++) {
      data.get(columns[j])!.push(Number(cells[j]));
    }
  }
  return { path, columns, data, rows: lines.length - 1 };
}

export function requireColumn(table: CsvTable, column: string): number[] {
  const values = table.data.get(column);
  if (values === undefined) {
    throw new MissingColumnError(column, table.path);
  }
  return values;
}
