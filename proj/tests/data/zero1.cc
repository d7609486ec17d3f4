{
  "coeff": "Q/Z",
  "kind": "cubical2",
  "values": {}
}
