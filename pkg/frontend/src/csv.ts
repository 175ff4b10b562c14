/**
 * Minimal CSV reading with schema checks that name the offending column.
 */

export class SchemaError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SchemaError";
  }
}

/** Parse CSV text (quoted fields supported, single-line records). */
export function parseCsv(text: string): string[][] {
  const rows: string[][] = [];
  for (const line of text.split(/\r?\n/)) {
    if (line === "") continue;
    const fields: string[] = [];
    let i = 0;
    while (i <= line.length) {
      let field = "";
      if (line[i] === '"') {
        i++;
        while (i < line.length) {
          if (line[i] === '"' && line[i + 1] === '"') {
            field += '"';
            i += 2;
          } else if (line[i] === '"') {
            i++;
            break;
          } else {
            field += line[i++];
          }
        }
      } else {
        while (i < line.length && line[i] !== ",") field += line[i++];
      }
      fields.push(field);
      if (i === line.length) break;
      i++; // skip the comma
    }
    rows.push(fields);
  }
  return rows;
}

export type Record = { [column: string]: string };

/**
 * Turn parsed CSV into records, verifying every required column exists.
 * Extra columns are allowed and ignored.
 */
export function toRecords(
  rows: string[][],
  required: string[],
  file: string,
): Record[] {
  if (rows.length === 0) {
    throw new SchemaError(`${file}: empty file`);
  }
  const header = rows[0];
  for (const column of required) {
    if (!header.includes(column)) {
      throw new SchemaError(`${file}: missing column '${column}'`);
    }
  }
  const records: Record[] = [];
  for (let r = 1; r < rows.length; r++) {
    const rec: Record = {};
    header.forEach((name, c) => {
      rec[name] = rows[r][c] ?? "";
    });
    records.push(rec);
  }
  return records;
}

/** Parse a numeric cell, naming the column and row on failure. */
export function numeric(rec: Record, column: string, file: string, row: number): number {
  const v = Number(rec[column]);
  if (!Number.isFinite(v)) {
    throw new SchemaError(
      `${file}: row ${row}: column '${column}' is not numeric: '${rec[column]}'`,
    );
  }
  return v;
}
